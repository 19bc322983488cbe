#pragma once

#include <vector>

#include "disorder/errors.hpp"
#include "disorder/model.hpp"

namespace disorder {

// Posterior disorder probability pi_n = P(theta <= n | observations up to n).
// The filter is exact for the geometric prior and kernel-switch likelihoods:
//
//   A   = pi + (1 - pi) * q            (mass on "disorder by next step")
//   pi' = A * f1(y|x) / (A * f1(y|x) + (1 - pi) * p * f0(y|x))
//
// where f0/f1 are the pre/post transition rows. pi = 1 is absorbing.

// Drifted disorder mass before seeing the next observation.
inline double drifted_mass(double pi, const GeometricPrior& prior) {
  return pi + (1.0 - pi) * prior.q;
}

// One-step predictive transition probability P(x_next | x_prev, pi): the
// prior-weighted mixture of the post and pre kernels.
inline double predictive_prob(const SensorModel& model, int x_prev, double pi,
                              int x_next) {
  const double a = drifted_mass(pi, model.prior);
  return a * model.post.at(x_prev, x_next) +
         (1.0 - pi) * model.prior.p * model.pre.at(x_prev, x_next);
}

// Bayes update on observing the transition x_prev -> x_next. Throws
// ZeroLikelihood when the predictive probability of the transition is zero
// (the model cannot generate the data).
inline double posterior_update(double pi, int x_prev, int x_next,
                               const SensorModel& model) {
  const double a = drifted_mass(pi, model.prior);
  const double num = a * model.post.at(x_prev, x_next);
  const double den =
      num + (1.0 - pi) * model.prior.p * model.pre.at(x_prev, x_next);
  if (den <= 0.0) throw ZeroLikelihood(x_prev, x_next);
  return num / den;
}

// Runs the filter along a full path. Element 0 is the prior mass pi0; the
// first update consumes the (x_0 -> x_1) transition.
inline std::vector<double> posterior_path(const SensorPath& path,
                                          const SensorModel& model) {
  std::vector<double> out;
  out.reserve(path.observations.size());
  double pi = model.prior.pi0;
  out.push_back(pi);
  for (std::size_t n = 1; n < path.observations.size(); ++n) {
    pi = posterior_update(pi, path.observations[n - 1], path.observations[n], model);
    out.push_back(pi);
  }
  return out;
}

// Residual of the conditional-mean identity
//   E[pi' | x_prev, pi] = pi + (1 - pi) * q,
// computed by exact summation over next symbols. Zero-probability symbols
// are skipped. |residual| <= 1e-12 is a correctness contract of the filter.
inline double posterior_drift_check(double pi, int x_prev,
                                    const SensorModel& model) {
  double mean = 0.0;
  for (int y = 0; y < model.states(); ++y) {
    const double w = predictive_prob(model, x_prev, pi, y);
    if (w <= 0.0) continue;
    mean += w * posterior_update(pi, x_prev, y, model);
  }
  return mean - drifted_mass(pi, model.prior);
}

}  // namespace disorder
