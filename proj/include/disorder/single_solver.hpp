#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "disorder/exact_eval.hpp"
#include "disorder/model.hpp"
#include "disorder/pi_grid.hpp"

namespace disorder {

// Detection-risk value function over (observation, posterior-grid) nodes.
struct ValueFunction1 {
  int states = 0;
  PiGrid grid;
  std::vector<double> v;  // states x grid.size(), row-major

  double at(int x, std::size_t k) const { return v[x * grid.size() + k]; }
  double& at(int x, std::size_t k) { return v[x * grid.size() + k]; }
  // Linear interpolation in the posterior coordinate.
  double interp(int x, double pi) const {
    return grid.interp({v.data() + x * grid.size(), grid.size()}, pi);
  }
};

// Stopping rule emitted by the solvers. For each observation the region
// {pi : stop} is checked for upper-set structure; when it holds, decisions
// off the grid use the per-observation threshold, otherwise the left grid
// node of the containing cell decides (and `monotone` flags the anomaly).
struct ThresholdPolicy1 {
  int states = 0;
  PiGrid grid;
  std::vector<std::uint8_t> stop;   // states x grid.size()
  std::vector<double> thresholds;   // per observation: smallest grid pi with stop
  bool monotone = true;

  bool stop_at(int x, std::size_t k) const { return stop[x * grid.size() + k] != 0; }
  bool decide(int x, double pi) const;
};

// One application of the detection-risk operator
//   T(v)(x, pi) = min{ 1 - pi, c*pi + sum_y P(y|x,pi) * v(y, pi'(x,y,pi)) }
// with the predictive mixture law and posterior update of the filter and
// linear interpolation for off-grid pi'. Ties choose stopping.
ValueFunction1 bellman_backup(const ValueFunction1& v, const SensorModel& model,
                              int workers = 1);

struct FixedPointResult {
  ValueFunction1 value;
  ThresholdPolicy1 policy;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> residual_log;
};

// Value iteration from v0 = 1 - pi until the sup-norm change drops to tol.
// The operator is nonexpansive, so the reported residual bounds the Bellman
// residual of the returned table.
FixedPointResult solve_fixed_point(const SensorModel& model, const PiGrid& grid,
                                   double tol, int max_iter, int workers = 1);

struct FiniteHorizonResult {
  // Indexed by steps-to-go: values[0] is the forced-stop payoff 1 - pi.
  std::vector<ValueFunction1> values;
  std::vector<ThresholdPolicy1> policies;
};

FiniteHorizonResult solve_finite_horizon(const SensorModel& model,
                                         const PiGrid& grid, int horizon,
                                         int workers = 1);

// Stage decision rule: stop at time n (with horizon N, so N - n steps to go)
// given the current observation and exact posterior.
using StagePolicyFn = std::function<bool(int n, int x, double pi)>;

// Decision function of a finite-horizon solution; stage 0 always stops.
StagePolicyFn policy_fn(const FiniteHorizonResult& solution, int horizon);

// Exact risk of a stopping rule by forward recursion over the reachable
// observation tree, with a forced stop at the horizon. `risk_posterior_form`
// evaluates the same payoff through the filter as a cross-check of the
// posterior rewrite of the risk.
PlayerRisk policy_risk_exact(const SensorModel& model, const StagePolicyFn& policy,
                             int horizon, std::size_t node_budget = 4'000'000);

}  // namespace disorder
