#pragma once

#include <cstdint>
#include <vector>

#include "disorder/errors.hpp"
#include "disorder/rng.hpp"

namespace disorder {

// Row-stochastic transition matrix over a finite observation alphabet.
// Rows are validated to sum to 1 within kRowSumTol; entries are never
// silently renormalized.
struct TransitionKernel {
  int states = 0;
  std::vector<double> probs;  // row-major, states x states

  double at(int x, int y) const { return probs[static_cast<std::size_t>(x) * states + y]; }
  const double* row(int x) const { return probs.data() + static_cast<std::size_t>(x) * states; }
};

inline constexpr double kRowSumTol = 1e-12;

// Rejects any non-square matrix, negative entry, or row whose sum deviates
// from 1 by more than kRowSumTol.
TransitionKernel validate_kernel(const std::vector<std::vector<double>>& probs);

// Disorder-time prior: mass pi0 at time 0, geometric tail with continuation
// probability p afterwards.
struct GeometricPrior {
  double pi0 = 0.0;
  double p = 0.0;
  double q = 0.0;  // q = 1 - p, stored explicitly

  GeometricPrior() = default;
  GeometricPrior(double pi0_, double p_);
};

// P(theta = j) for j >= 0.
double prior_pmf(const GeometricPrior& prior, std::uint64_t j);

// One sensor: pre/post-disorder kernels over the same alphabet, disorder
// prior, per-step delay cost, and the deterministic initial observation.
struct SensorModel {
  TransitionKernel pre;
  TransitionKernel post;
  GeometricPrior prior;
  double delay_cost = 0.0;
  int initial_state = 0;

  SensorModel() = default;
  SensorModel(TransitionKernel pre_, TransitionKernel post_, GeometricPrior prior_,
              double delay_cost_, int initial_state_);
  int states() const { return pre.states; }
};

struct NetModel {
  std::vector<SensorModel> sensors;
  int horizon = 0;

  int size() const { return static_cast<int>(sensors.size()); }
};

struct SensorPath {
  std::vector<int> observations;  // length horizon + 1
  std::uint64_t theta = 0;        // realized disorder time (may exceed horizon)
};

// Inverse-CDF draw from the prior. Values are exact in distribution; the
// tail is capped at 2^62 so the return type never overflows.
std::uint64_t sample_disorder(const GeometricPrior& prior, Rng& rng);

// Simulates one sensor: the transition producing observation n is drawn from
// `post` iff theta <= n, from `pre` otherwise. theta = 0 therefore yields a
// pure post-regime path and theta > horizon a pure pre-regime path.
SensorPath simulate_sensor(const SensorModel& model, std::uint64_t theta,
                           int horizon, Rng& rng);

// Independent composition across sensors. Sensor r consumes the dedicated
// stream sub_seed(seed, kStreamSensor, r), so editing the sensor list never
// perturbs the draws of the remaining sensors.
std::vector<SensorPath> simulate_net(const NetModel& net, std::uint64_t seed);

// Draws one symbol from a kernel row by inverse CDF.
int sample_row(const TransitionKernel& kernel, int x, Rng& rng);

}  // namespace disorder
