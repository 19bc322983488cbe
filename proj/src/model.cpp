#include "disorder/model.hpp"

#include <cmath>
#include <stdexcept>

namespace disorder {

TransitionKernel validate_kernel(const std::vector<std::vector<double>>& probs) {
  const int n = static_cast<int>(probs.size());
  if (n < 2) throw std::invalid_argument("kernel needs at least 2 states");
  TransitionKernel kernel;
  kernel.states = n;
  kernel.probs.reserve(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(probs[x].size()) != n)
      throw std::invalid_argument("kernel matrix is not square");
    double sum = 0.0;
    for (int y = 0; y < n; ++y) {
      const double v = probs[x][y];
      if (v < 0.0) throw NegativeEntry(x, y, v);
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTol) throw NonStochasticRow(x, sum);
    for (int y = 0; y < n; ++y) kernel.probs.push_back(probs[x][y]);
  }
  return kernel;
}

GeometricPrior::GeometricPrior(double pi0_, double p_) : pi0(pi0_), p(p_), q(1.0 - p_) {
  if (!(pi0 > 0.0) || !(pi0 < 1.0))
    throw std::invalid_argument("pi0 must lie in (0,1)");
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("p must lie in (0,1)");
}

double prior_pmf(const GeometricPrior& prior, std::uint64_t j) {
  if (j == 0) return prior.pi0;
  return (1.0 - prior.pi0) * std::pow(prior.p, static_cast<double>(j - 1)) * prior.q;
}

SensorModel::SensorModel(TransitionKernel pre_, TransitionKernel post_,
                         GeometricPrior prior_, double delay_cost_, int initial_state_)
    : pre(std::move(pre_)),
      post(std::move(post_)),
      prior(prior_),
      delay_cost(delay_cost_),
      initial_state(initial_state_) {
  if (pre.states != post.states)
    throw std::invalid_argument("pre and post kernels must share the alphabet");
  if (!(delay_cost > 0.0)) throw std::invalid_argument("delay cost must be positive");
  if (initial_state < 0 || initial_state >= pre.states)
    throw std::invalid_argument("initial state outside the alphabet");
}

std::uint64_t sample_disorder(const GeometricPrior& prior, Rng& rng) {
  const double u = rng.next_unit();
  if (u < prior.pi0) return 0;
  // Conditional tail: P(theta <= j | theta >= 1) = 1 - p^j, so the inverse
  // CDF at v is the smallest j with j >= log(1-v)/log(p).
  const double v = (u - prior.pi0) / (1.0 - prior.pi0);
  const double j = std::ceil(std::log1p(-v) / std::log(prior.p));
  if (!(j >= 1.0)) return 1;
  if (j >= 0x1.0p62) return static_cast<std::uint64_t>(1) << 62;
  return static_cast<std::uint64_t>(j);
}

int sample_row(const TransitionKernel& kernel, int x, Rng& rng) {
  const double u = rng.next_unit();
  const double* row = kernel.row(x);
  double cum = 0.0;
  for (int y = 0; y < kernel.states - 1; ++y) {
    cum += row[y];
    if (u < cum) return y;
  }
  return kernel.states - 1;
}

SensorPath simulate_sensor(const SensorModel& model, std::uint64_t theta,
                           int horizon, Rng& rng) {
  SensorPath path;
  path.theta = theta;
  path.observations.resize(static_cast<std::size_t>(horizon) + 1);
  path.observations[0] = model.initial_state;
  for (int n = 1; n <= horizon; ++n) {
    const bool post = static_cast<std::uint64_t>(n) >= theta;
    const TransitionKernel& kernel = post ? model.post : model.pre;
    path.observations[n] = sample_row(kernel, path.observations[n - 1], rng);
  }
  return path;
}

std::vector<SensorPath> simulate_net(const NetModel& net, std::uint64_t seed) {
  std::vector<SensorPath> paths;
  paths.reserve(net.sensors.size());
  for (std::size_t r = 0; r < net.sensors.size(); ++r) {
    Rng rng(sub_seed(seed, kStreamSensor, r));
    const std::uint64_t theta = sample_disorder(net.sensors[r].prior, rng);
    paths.push_back(simulate_sensor(net.sensors[r], theta, net.horizon, rng));
  }
  return paths;
}

}  // namespace disorder
