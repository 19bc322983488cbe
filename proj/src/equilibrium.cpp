#include "disorder/equilibrium.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "disorder/parallel.hpp"
#include "disorder/posterior.hpp"
#include "disorder/rng.hpp"

namespace disorder {

JointGrid JointGrid::make(const NetModel& net, std::vector<PiGrid> grids,
                          std::size_t state_budget) {
  if (grids.size() != net.sensors.size())
    throw std::invalid_argument("one posterior grid per sensor required");
  JointGrid g;
  g.grids = std::move(grids);
  g.obs_counts.resize(net.sensors.size());
  g.strides.resize(net.sensors.size());
  std::size_t total = 1;
  for (int r = net.size() - 1; r >= 0; --r) {
    g.obs_counts[r] = net.sensors[r].states();
    g.strides[r] = total;
    total *= static_cast<std::size_t>(g.obs_counts[r]) * g.grids[r].size();
  }
  g.state_count = total;
  if (total > state_budget) throw BudgetExceeded(total, state_budget);
  return g;
}

void JointGrid::decode(std::size_t idx, std::span<int> x,
                       std::span<std::size_t> k) const {
  for (int r = 0; r < sensors(); ++r) {
    const std::size_t local_size =
        static_cast<std::size_t>(obs_counts[r]) * grids[r].size();
    const std::size_t local = (idx / strides[r]) % local_size;
    x[r] = static_cast<int>(local / grids[r].size());
    k[r] = local % grids[r].size();
  }
}

std::size_t JointGrid::encode(std::span<const int> x,
                              std::span<const std::size_t> k) const {
  std::size_t idx = 0;
  for (int r = 0; r < sensors(); ++r)
    idx += (static_cast<std::size_t>(x[r]) * grids[r].size() + k[r]) * strides[r];
  return idx;
}

std::size_t JointGrid::encode_exact(std::span<const int> x,
                                    std::span<const double> pi) const {
  std::size_t idx = 0;
  for (int r = 0; r < sensors(); ++r) {
    const PiGrid::Cell c = grids[r].locate(pi[r]);
    if (c.t != 0.0)
      throw std::invalid_argument("posterior value off the grid; a reachable-closure grid is required");
    idx += (static_cast<std::size_t>(x[r]) * grids[r].size() + c.lo) * strides[r];
  }
  return idx;
}

double JointGrid::interp(std::span<const double> table, std::span<const int> x,
                         std::span<const double> pi) const {
  const int p = sensors();
  std::size_t base = 0;
  // Sensors with an off-node coordinate contribute a blending dimension.
  int active[kMaxPlayers];
  double weight_hi[kMaxPlayers];
  std::size_t step[kMaxPlayers];
  int na = 0;
  for (int r = 0; r < p; ++r) {
    const PiGrid::Cell c = grids[r].locate(pi[r]);
    base += (static_cast<std::size_t>(x[r]) * grids[r].size() + c.lo) * strides[r];
    if (c.t != 0.0) {
      active[na] = r;
      weight_hi[na] = c.t;
      step[na] = strides[r];
      ++na;
    }
  }
  double sum = 0.0;
  for (unsigned corner = 0; corner < (1u << na); ++corner) {
    double w = 1.0;
    std::size_t idx = base;
    for (int a = 0; a < na; ++a) {
      if (corner & (1u << a)) {
        w *= weight_hi[a];
        idx += step[a];
      } else {
        w *= 1.0 - weight_hi[a];
      }
    }
    sum += w * table[idx];
  }
  return sum;
}

namespace {

// Nonzero next-symbol branch of one sensor: symbol, predictive probability,
// updated posterior.
struct Branch {
  int symbol;
  double prob;
  double next_pi;
};

struct StateContext {
  std::vector<int> x;
  std::vector<std::size_t> k;
  std::vector<double> pi;
  std::vector<std::vector<Branch>> branches;  // per sensor
};

void decode_state(const NetModel& net, const JointGrid& grid, std::size_t state,
                  StateContext& ctx) {
  const int p = grid.sensors();
  ctx.x.resize(p);
  ctx.k.resize(p);
  ctx.pi.resize(p);
  grid.decode(state, ctx.x, ctx.k);
  for (int r = 0; r < p; ++r) ctx.pi[r] = grid.grids[r][ctx.k[r]];
  ctx.branches.assign(p, {});
  for (int r = 0; r < p; ++r) {
    const SensorModel& m = net.sensors[r];
    for (int y = 0; y < m.states(); ++y) {
      const double w = predictive_prob(m, ctx.x[r], ctx.pi[r], y);
      if (w <= 0.0) continue;
      ctx.branches[r].push_back({y, w, posterior_update(ctx.pi[r], ctx.x[r], y, m)});
    }
  }
}

}  // namespace

std::vector<BestResponse> stage_state_values(const NetModel& net,
                                             const SimpleGame& game,
                                             const JointGrid& grid,
                                             const StageSolution& prev,
                                             std::size_t state) {
  const int p = grid.sensors();
  StateContext ctx;
  decode_state(net, grid, state, ctx);

  std::vector<double> acc(p, 0.0);
  std::vector<int> pick(p, 0);
  std::vector<int> y(p);
  std::vector<double> next_pi(p);
  std::vector<double> g(p);

  // Cartesian product over per-sensor nonzero branches.
  for (;;) {
    double w = 1.0;
    for (int r = 0; r < p; ++r) {
      const Branch& br = ctx.branches[r][pick[r]];
      w *= br.prob;
      y[r] = br.symbol;
      next_pi[r] = br.next_pi;
    }
    Coalition votes = 0;
    for (int j = 0; j < p; ++j) {
      g[j] = grid.interp(prev.values[j], y, next_pi);
      if (1.0 - next_pi[j] <= g[j]) votes |= Coalition{1} << j;
    }
    for (int i = 0; i < p; ++i) {
      const auto [stops_without, stops_with] = game.pivotal_gap(i, votes);
      const double diff = (1.0 - next_pi[i]) - g[i];
      double payoff = g[i];
      if (stops_without && diff > 0.0) payoff += diff;
      if (stops_with && diff < 0.0) payoff += diff;
      acc[i] += w * payoff;
    }
    int r = p - 1;
    while (r >= 0 && ++pick[r] == static_cast<int>(ctx.branches[r].size())) {
      pick[r] = 0;
      --r;
    }
    if (r < 0) break;
  }

  std::vector<BestResponse> out(p);
  for (int i = 0; i < p; ++i) {
    out[i].value = net.sensors[i].delay_cost * ctx.pi[i] + acc[i];
    out[i].stop = 1.0 - ctx.pi[i] <= out[i].value;
  }
  return out;
}

BestResponse best_response_value(int player, const NetModel& net,
                                 const SimpleGame& game, const JointGrid& grid,
                                 const StageSolution& prev, std::size_t state) {
  return stage_state_values(net, game, grid, prev, state)[player];
}

StageSolution stage_equilibrium(const NetModel& net, const SimpleGame& game,
                                const JointGrid& grid, const StageSolution& prev,
                                int workers) {
  const int p = grid.sensors();
  const std::size_t n = grid.state_count;
  StageSolution stage;
  stage.values.assign(p, std::vector<double>(n, 0.0));
  stage.resolved.assign(p, std::vector<double>(n, 0.0));
  stage.stop.assign(p, std::vector<std::uint8_t>(n, 0));

  // Vote payoffs at a common alarm are vote-independent, so the stage values
  // do not depend on the current-stage profile and each player's rule
  // [1 - pi_i <= value_i] is a dominant choice wherever it is pivotal (and
  // the canonical one elsewhere). The best response to any profile is that
  // fixed rule, which the sweep below computes once.
  std::vector<std::vector<std::uint8_t>> rule(p, std::vector<std::uint8_t>(n, 0));
  parallel_for(n, workers, [&](std::size_t s) {
    const std::vector<BestResponse> br = stage_state_values(net, game, grid, prev, s);
    for (int i = 0; i < p; ++i) {
      stage.values[i][s] = br[i].value;
      rule[i][s] = br[i].stop ? 1 : 0;
    }
  });

  // Committed procedure: synchronous best response from all-stop with
  // revisit detection. With a constant best response it settles in at most
  // two sweeps and a revisited profile can only be the rule itself.
  std::vector<std::vector<std::uint8_t>> profile(p, std::vector<std::uint8_t>(n, 1));
  std::set<std::vector<std::vector<std::uint8_t>>> seen{profile};
  for (;;) {
    ++stage.iterations;
    if (rule == profile) break;
    profile = rule;
    if (!seen.insert(profile).second) {
      stage.cycle = true;
      break;
    }
  }
  stage.stop = profile;

  std::vector<int> x(p);
  std::vector<std::size_t> k(p);
  for (std::size_t s = 0; s < n; ++s) {
    grid.decode(s, x, k);
    Coalition mask = 0;
    for (int i = 0; i < p; ++i)
      if (stage.stop[i][s]) mask |= Coalition{1} << i;
    const bool stops = game.wins(mask);
    for (int i = 0; i < p; ++i) {
      const double pi_i = grid.grids[i][k[i]];
      stage.resolved[i][s] = stops ? 1.0 - pi_i : stage.values[i][s];
    }
  }
  return stage;
}

EquilibriumSolution solve_game(const NetModel& net, const SimpleGame& game,
                               std::vector<PiGrid> grids, int horizon,
                               std::size_t state_budget, int workers) {
  if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
  if (game.players() != net.size())
    throw std::invalid_argument("game size does not match sensor count");
  EquilibriumSolution solution;
  solution.grid = JointGrid::make(net, std::move(grids), state_budget);
  solution.horizon = horizon;
  const JointGrid& grid = solution.grid;
  const int p = grid.sensors();
  const std::size_t n = grid.state_count;

  // Terminal stage: forced stop, payoff 1 - pi_i, everyone votes stop.
  StageSolution terminal;
  terminal.values.assign(p, std::vector<double>(n, 0.0));
  terminal.stop.assign(p, std::vector<std::uint8_t>(n, 1));
  terminal.iterations = 1;
  std::vector<int> x(p);
  std::vector<std::size_t> k(p);
  for (std::size_t s = 0; s < n; ++s) {
    grid.decode(s, x, k);
    for (int i = 0; i < p; ++i)
      terminal.values[i][s] = 1.0 - grid.grids[i][k[i]];
  }
  terminal.resolved = terminal.values;
  solution.stages.push_back(std::move(terminal));

  for (int m = 1; m <= horizon; ++m)
    solution.stages.push_back(
        stage_equilibrium(net, game, grid, solution.stages.back(), workers));
  return solution;
}

Coalition EquilibriumSolution::votes_at(int steps_to_go, std::span<const int> x,
                                        std::span<const double> pi) const {
  const StageSolution& stage = stages[steps_to_go];
  Coalition votes = 0;
  for (int j = 0; j < grid.sensors(); ++j) {
    const double g = grid.interp(stage.values[j], x, pi);
    if (1.0 - pi[j] <= g) votes |= Coalition{1} << j;
  }
  return votes;
}

JointPolicy equilibrium_policy(const EquilibriumSolution& solution) {
  JointPolicy policy;
  const EquilibriumSolution* sol = &solution;
  policy.votes = [sol](int n, std::span<const int> x, std::span<const double> pi) {
    const int m = sol->horizon - n;
    return sol->votes_at(m < 0 ? 0 : m, x, pi);
  };
  policy.persistent = false;
  return policy;
}

namespace {

// Visited (steps-to-go, state) pairs of the equilibrium tree plus the
// equilibrium risks, captured in one instrumented pass.
struct VisitLog {
  std::set<std::pair<int, std::size_t>> visited;
};

JointPolicy table_policy(const EquilibriumSolution& solution,
                         const std::vector<std::vector<std::vector<std::uint8_t>>>* flips,
                         int flip_player, VisitLog* log) {
  JointPolicy policy;
  const EquilibriumSolution* sol = &solution;
  policy.votes = [sol, flips, flip_player, log](int n, std::span<const int> x,
                                                std::span<const double> pi) {
    const int m = sol->horizon - n;
    const std::size_t idx = sol->grid.encode_exact(x, pi);
    if (log) log->visited.insert({m, idx});
    Coalition votes = 0;
    for (int j = 0; j < sol->grid.sensors(); ++j) {
      bool stop = sol->stages[m].stop[j][idx] != 0;
      if (flips && j == flip_player && (*flips)[m][j][idx]) stop = !stop;
      if (stop) votes |= Coalition{1} << j;
    }
    return votes;
  };
  return policy;
}

}  // namespace

DeviationReport verify_equilibrium(const EquilibriumSolution& solution,
                                   const NetModel& net, const SimpleGame& game,
                                   int deviation_budget, std::uint64_t seed,
                                   std::size_t node_budget) {
  const JointGrid& grid = solution.grid;
  const int p = grid.sensors();
  const int stages = solution.horizon + 1;
  DeviationReport report;
  report.players.resize(p);
  for (const StageSolution& st : solution.stages)
    report.any_cycle = report.any_cycle || st.cycle;

  VisitLog log;
  const std::vector<PlayerRisk> eq_risk = joint_policy_risk_exact(
      net, game, table_policy(solution, nullptr, -1, &log), node_budget);

  // One flip buffer reused across deviations.
  std::vector<std::vector<std::vector<std::uint8_t>>> flips(
      stages, std::vector<std::vector<std::uint8_t>>(
                  p, std::vector<std::uint8_t>(grid.state_count, 0)));

  for (int i = 0; i < p; ++i) {
    auto& pr = report.players[i];
    pr.eq_risk = eq_risk[i].risk;
    const JointPolicy dev = table_policy(solution, &flips, i, nullptr);

    auto evaluate = [&](int stage_of_worst, std::size_t state_of_worst) {
      ++pr.evaluated;
      const double dev_risk = joint_policy_risk_exact(net, game, dev, node_budget)[i].risk;
      const double decrease = pr.eq_risk - dev_risk;
      if (decrease > pr.max_decrease) {
        pr.max_decrease = decrease;
        pr.worst_stage = stage_of_worst;
        pr.worst_state = state_of_worst;
      }
    };

    // Exhaustive single-state flips. Pairs never visited by a positive-
    // probability path leave the alarm unchanged on every realizable path,
    // so their risk delta is identically zero.
    for (int m = 0; m < stages; ++m) {
      for (std::size_t s = 0; s < grid.state_count; ++s) {
        ++pr.deviations_tested;
        if (!log.visited.count({m, s})) continue;
        flips[m][i][s] = 1;
        evaluate(m, s);
        flips[m][i][s] = 0;
      }
    }

    // Random multi-flips over visited pairs.
    std::vector<std::pair<int, std::size_t>> visited(log.visited.begin(),
                                                     log.visited.end());
    Rng rng(sub_seed(seed, kStreamMisc, static_cast<std::uint64_t>(i)));
    for (int d = 0; d < deviation_budget; ++d) {
      const int count = 1 + static_cast<int>(rng.next_u64() % 4);
      std::vector<std::pair<int, std::size_t>> chosen;
      for (int c = 0; c < count; ++c)
        chosen.push_back(visited[rng.next_u64() % visited.size()]);
      for (const auto& [m, s] : chosen) flips[m][i][s] ^= 1;
      ++pr.deviations_tested;
      evaluate(-1, 0);
      for (auto& stage_flips : flips)
        std::fill(stage_flips[i].begin(), stage_flips[i].end(), 0);
    }
    report.max_decrease = std::max(report.max_decrease, pr.max_decrease);
  }
  return report;
}

}  // namespace disorder
