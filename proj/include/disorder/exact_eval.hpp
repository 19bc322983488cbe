#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "disorder/model.hpp"
#include "disorder/simple_game.hpp"

namespace disorder {

// Exact risk of a stopping policy, split into its two defining components
// and, as a cross-check, the same quantity evaluated through the posterior
// process: E[(1 - pi_T) + c * sum_{k<T} pi_k].
struct PlayerRisk {
  double false_alarm = 0.0;  // P(T < theta)
  double delay = 0.0;        // E (T - theta)^+
  double risk = 0.0;         // false_alarm + c * delay
  double risk_posterior_form = 0.0;
};

// Instantaneous per-sensor votes at time n given the joint observations and
// per-sensor filter posteriors. Bit r of the result is sensor r's vote.
using JointVotesFn =
    std::function<Coalition(int n, std::span<const int> x, std::span<const double> pi)>;

struct JointPolicy {
  JointVotesFn votes;
  // Latch votes once raised (persistent alarms, used by naive fusion).
  bool persistent = false;
};

// Walks the full tree of positive-probability joint observation sequences up
// to the net horizon and evaluates the policy's risk exactly. The system
// stops at the first time the aggregated votes win, with a forced stop at
// the horizon. Throws TreeTooLarge when the tree exceeds `node_budget`.
std::vector<PlayerRisk> joint_policy_risk_exact(const NetModel& net,
                                                const SimpleGame& game,
                                                const JointPolicy& policy,
                                                std::size_t node_budget = 4'000'000);

}  // namespace disorder
