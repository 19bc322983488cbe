#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "disorder/exact_eval.hpp"
#include "disorder/model.hpp"
#include "disorder/pi_grid.hpp"
#include "disorder/simple_game.hpp"

namespace disorder {

// Product grid over per-sensor (observation, posterior-node) pairs. Joint
// states are flat indices; sensor p-1 varies fastest.
struct JointGrid {
  std::vector<int> obs_counts;        // alphabet size per sensor
  std::vector<PiGrid> grids;          // posterior grid per sensor
  std::vector<std::size_t> strides;   // flat-index stride per sensor
  std::size_t state_count = 0;

  static JointGrid make(const NetModel& net, std::vector<PiGrid> grids,
                        std::size_t state_budget);

  int sensors() const { return static_cast<int>(obs_counts.size()); }
  void decode(std::size_t idx, std::span<int> x, std::span<std::size_t> k) const;
  std::size_t encode(std::span<const int> x, std::span<const std::size_t> k) const;
  // Flat index of an exact grid state; throws std::invalid_argument when any
  // posterior coordinate is off the grid.
  std::size_t encode_exact(std::span<const int> x, std::span<const double> pi) const;
  // Multilinear interpolation of a nodal table in the posterior coordinates.
  double interp(std::span<const double> table, std::span<const int> x,
                std::span<const double> pi) const;
};

struct BestResponse {
  double value = 0.0;
  bool stop = false;
};

// One stage of the backward recursion, indexed by steps-to-go. `values` is
// the per-player continuation-from-next-step table (terminal stage: 1-pi_i);
// `stop` is the stopping set used at states with this many steps remaining;
// `resolved` settles stop-vs-continue at the node given everyone's votes.
struct StageSolution {
  std::vector<std::vector<double>> values;
  std::vector<std::vector<double>> resolved;
  std::vector<std::vector<std::uint8_t>> stop;
  int iterations = 0;
  bool cycle = false;
};

struct EquilibriumSolution {
  JointGrid grid;
  int horizon = 0;
  std::vector<StageSolution> stages;  // steps-to-go 0..horizon

  // Vote mask at an exact joint state with `steps_to_go` remaining: player j
  // votes stop iff 1 - pi_j <= interpolated continuation value. At grid
  // nodes this reproduces the stored stop tables bit-for-bit.
  Coalition votes_at(int steps_to_go, std::span<const int> x,
                     std::span<const double> pi) const;
};

// Per-state stage values for every player given the previous stage. The
// expectation over next joint observations is exact; next posteriors are
// interpolated per sensor. Exposed for the enumeration oracle.
std::vector<BestResponse> stage_state_values(const NetModel& net,
                                             const SimpleGame& game,
                                             const JointGrid& grid,
                                             const StageSolution& prev,
                                             std::size_t state);

// Optimal-stopping-set value for one player with the other players' votes
// held fixed, split over the events "stops without i's vote" and "stops with
// it": the (diff)^+ part is collected on the first event and the (diff)^-
// part on the second, which is exactly the pointwise minimum on the pivotal
// region.
BestResponse best_response_value(int player, const NetModel& net,
                                 const SimpleGame& game, const JointGrid& grid,
                                 const StageSolution& prev, std::size_t state);

// Synchronous best-response iteration from the all-stop profile. Stop
// payoffs at a common alarm do not depend on who voted, so each player's
// rule is dominant and the iteration settles within two sweeps; the loop,
// iteration count, and cycle flag implement the committed general procedure.
StageSolution stage_equilibrium(const NetModel& net, const SimpleGame& game,
                                const JointGrid& grid, const StageSolution& prev,
                                int workers = 1);

EquilibriumSolution solve_game(const NetModel& net, const SimpleGame& game,
                               std::vector<PiGrid> grids, int horizon,
                               std::size_t state_budget = 1'000'000,
                               int workers = 1);

// Stage policy of a solved game as instantaneous votes over time.
JointPolicy equilibrium_policy(const EquilibriumSolution& solution);

// Unilateral-deviation audit by exact policy evaluation: every single-state
// flip of each player's stopping tables, plus `deviation_budget` random
// multi-flips per player. Flips at (stage, state) pairs never visited by a
// positive-probability path cannot change the alarm on any realizable path
// and are counted without re-evaluation. Requires reachable-closure grids so
// that every tree state is a grid node.
struct DeviationReport {
  struct PerPlayer {
    double eq_risk = 0.0;
    std::size_t deviations_tested = 0;
    std::size_t evaluated = 0;
    double max_decrease = 0.0;  // largest exact risk improvement found
    int worst_stage = -1;
    std::size_t worst_state = 0;
  };
  std::vector<PerPlayer> players;
  double max_decrease = 0.0;
  bool any_cycle = false;
};

DeviationReport verify_equilibrium(const EquilibriumSolution& solution,
                                   const NetModel& net, const SimpleGame& game,
                                   int deviation_budget, std::uint64_t seed,
                                   std::size_t node_budget = 4'000'000);

}  // namespace disorder
