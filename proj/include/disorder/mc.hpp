#pragma once

#include <cstdint>
#include <vector>

#include "disorder/exact_eval.hpp"
#include "disorder/model.hpp"
#include "disorder/simple_game.hpp"

namespace disorder {

// Mean with a 1-sigma standard error; se is NaN for single-replication runs.
struct Estimate {
  double mean = 0.0;
  double se = 0.0;
};

struct RiskEstimate {
  Estimate false_alarm;
  Estimate delay;
  Estimate risk;
  std::uint64_t reps = 0;
};

struct McResult {
  std::vector<RiskEstimate> per_sensor;
  // XOR of per-replication path hashes; independent of the shard layout.
  std::uint64_t path_digest = 0;
};

// Seeded Monte Carlo evaluation of a vote policy. Replication k consumes the
// dedicated stream sub_seed(seed, kStreamRep, k); alarms that never fire
// within the horizon are charged as a forced stop at the horizon. Estimates
// are bit-identical for a fixed worker count (shards merge in index order).
McResult estimate_policy_risk(const NetModel& net, const SimpleGame& game,
                              const JointPolicy& policy, std::uint64_t reps,
                              std::uint64_t seed, int workers = 1);

// Paired comparison of two vote policies on common random numbers: both are
// evaluated on the same simulated paths within each replication.
struct ComparisonReport {
  std::vector<RiskEstimate> first;
  std::vector<RiskEstimate> second;
  std::vector<Estimate> risk_diff;  // first minus second, paired
  std::uint64_t path_digest = 0;
  std::uint64_t reps = 0;
};

ComparisonReport compare_policies(const NetModel& net, const SimpleGame& game,
                                  const JointPolicy& first, const JointPolicy& second,
                                  std::uint64_t reps, std::uint64_t seed,
                                  int workers = 1);

// Alarm time of a policy on one realized set of paths: first time the
// aggregated votes win, or horizon + 1 as the never-proxy.
int policy_alarm_time(const NetModel& net, const SimpleGame& game,
                      const JointPolicy& policy,
                      const std::vector<SensorPath>& paths);

}  // namespace disorder
