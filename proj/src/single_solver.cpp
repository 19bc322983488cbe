#include "disorder/single_solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "disorder/parallel.hpp"
#include "disorder/posterior.hpp"

namespace disorder {

namespace {

// Backup of a single (x, k) node; also reports whether stopping attains the min.
double backup_node(const ValueFunction1& v, const SensorModel& model, int x,
                   std::size_t k, bool* stop) {
  const double pi = v.grid[k];
  const double stop_payoff = 1.0 - pi;
  double cont = model.delay_cost * pi;
  for (int y = 0; y < model.states(); ++y) {
    const double w = predictive_prob(model, x, pi, y);
    if (w <= 0.0) continue;
    cont += w * v.interp(y, posterior_update(pi, x, y, model));
  }
  if (stop) *stop = stop_payoff <= cont;
  return stop_payoff <= cont ? stop_payoff : cont;
}

ValueFunction1 backup_with_stop(const ValueFunction1& v, const SensorModel& model,
                                int workers, std::vector<std::uint8_t>* stop_out) {
  ValueFunction1 out;
  out.states = v.states;
  out.grid = v.grid;
  out.v.resize(v.v.size());
  if (stop_out) stop_out->assign(v.v.size(), 0);
  const std::size_t g = v.grid.size();
  parallel_for(v.v.size(), workers, [&](std::size_t idx) {
    const int x = static_cast<int>(idx / g);
    const std::size_t k = idx % g;
    bool stop = false;
    out.v[idx] = backup_node(v, model, x, k, &stop);
    if (stop_out) (*stop_out)[idx] = stop ? 1 : 0;
  });
  return out;
}

ValueFunction1 terminal_value(const SensorModel& model, const PiGrid& grid) {
  ValueFunction1 v;
  v.states = model.states();
  v.grid = grid;
  v.v.resize(static_cast<std::size_t>(v.states) * grid.size());
  for (int x = 0; x < v.states; ++x)
    for (std::size_t k = 0; k < grid.size(); ++k) v.at(x, k) = 1.0 - grid[k];
  return v;
}

ThresholdPolicy1 make_policy(const PiGrid& grid, int states,
                             std::vector<std::uint8_t> stop) {
  ThresholdPolicy1 policy;
  policy.states = states;
  policy.grid = grid;
  policy.stop = std::move(stop);
  policy.thresholds.assign(states, std::numeric_limits<double>::quiet_NaN());
  for (int x = 0; x < states; ++x) {
    std::size_t first = grid.size();
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (policy.stop_at(x, k)) {
        first = k;
        break;
      }
    }
    if (first < grid.size()) policy.thresholds[x] = grid[first];
    for (std::size_t k = first; k < grid.size(); ++k)
      if (!policy.stop_at(x, k)) policy.monotone = false;
  }
  return policy;
}

}  // namespace

bool ThresholdPolicy1::decide(int x, double pi) const {
  if (monotone) return pi >= thresholds[x];
  const PiGrid::Cell c = grid.locate(pi);
  return stop_at(x, c.lo);
}

ValueFunction1 bellman_backup(const ValueFunction1& v, const SensorModel& model,
                              int workers) {
  return backup_with_stop(v, model, workers, nullptr);
}

FixedPointResult solve_fixed_point(const SensorModel& model, const PiGrid& grid,
                                   double tol, int max_iter, int workers) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  FixedPointResult result;
  ValueFunction1 v = terminal_value(model, grid);
  std::vector<std::uint8_t> stop;
  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= max_iter; ++iter) {
    ValueFunction1 next = backup_with_stop(v, model, workers, &stop);
    residual = 0.0;
    for (std::size_t i = 0; i < v.v.size(); ++i)
      residual = std::max(residual, std::abs(next.v[i] - v.v[i]));
    result.residual_log.push_back(residual);
    v = std::move(next);
    if (residual <= tol) {
      result.value = std::move(v);
      result.policy = make_policy(grid, model.states(), std::move(stop));
      result.iterations = iter;
      result.residual = residual;
      return result;
    }
  }
  throw NoConvergence(max_iter, residual);
}

FiniteHorizonResult solve_finite_horizon(const SensorModel& model,
                                         const PiGrid& grid, int horizon,
                                         int workers) {
  if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
  FiniteHorizonResult result;
  result.values.reserve(horizon + 1);
  result.policies.reserve(horizon + 1);
  result.values.push_back(terminal_value(model, grid));
  // Forced stop with zero steps to go.
  result.policies.push_back(make_policy(
      grid, model.states(),
      std::vector<std::uint8_t>(static_cast<std::size_t>(model.states()) * grid.size(), 1)));
  for (int m = 1; m <= horizon; ++m) {
    std::vector<std::uint8_t> stop;
    result.values.push_back(backup_with_stop(result.values.back(), model, workers, &stop));
    result.policies.push_back(make_policy(grid, model.states(), std::move(stop)));
  }
  return result;
}

StagePolicyFn policy_fn(const FiniteHorizonResult& solution, int horizon) {
  if (static_cast<int>(solution.policies.size()) != horizon + 1)
    throw std::invalid_argument("solution horizon mismatch");
  return [&solution, horizon](int n, int x, double pi) {
    if (n >= horizon) return true;
    return solution.policies[horizon - n].decide(x, pi);
  };
}

PlayerRisk policy_risk_exact(const SensorModel& model, const StagePolicyFn& policy,
                             int horizon, std::size_t node_budget) {
  NetModel net;
  net.sensors.push_back(model);
  net.horizon = horizon;
  JointPolicy joint;
  joint.votes = [&policy](int n, std::span<const int> x, std::span<const double> pi) {
    return policy(n, x[0], pi[0]) ? Coalition{1} : Coalition{0};
  };
  return joint_policy_risk_exact(net, SimpleGame::dictator(1, 0), joint, node_budget)[0];
}

}  // namespace disorder
