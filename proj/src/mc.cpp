#include "disorder/mc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "disorder/parallel.hpp"
#include "disorder/posterior.hpp"

namespace disorder {

namespace {

struct Welford {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  void merge(const Welford& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double d = o.mean - mean;
    const std::uint64_t total = n + o.n;
    mean += d * static_cast<double>(o.n) / static_cast<double>(total);
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) /
                     static_cast<double>(total);
    n = total;
  }
  Estimate estimate() const {
    Estimate e;
    e.mean = mean;
    e.se = n >= 2 ? std::sqrt(m2 / (static_cast<double>(n) * static_cast<double>(n - 1)))
                  : std::numeric_limits<double>::quiet_NaN();
    return e;
  }
};

std::uint64_t fnv_bytes(std::uint64_t h, const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t rep_digest(std::uint64_t rep, const std::vector<SensorPath>& paths) {
  std::uint64_t h = fnv_bytes(1469598103934665603ULL, &rep, sizeof rep);
  for (const SensorPath& path : paths) {
    h = fnv_bytes(h, &path.theta, sizeof path.theta);
    h = fnv_bytes(h, path.observations.data(),
                  path.observations.size() * sizeof(int));
  }
  return h;
}

int alarm_on_paths(const NetModel& net, const SimpleGame& game,
                   const JointPolicy& policy, const std::vector<SensorPath>& paths,
                   const std::vector<std::vector<double>>& posts) {
  const int p = net.size();
  std::vector<int> x(p);
  std::vector<double> pi(p);
  Coalition latch = 0;
  for (int n = 0; n <= net.horizon; ++n) {
    for (int r = 0; r < p; ++r) {
      x[r] = paths[r].observations[n];
      pi[r] = posts[r][n];
    }
    Coalition votes = policy.votes(n, x, pi);
    if (policy.persistent) votes = latch |= votes;
    if (game.wins(votes)) return n;
  }
  return net.horizon + 1;  // never-proxy
}

struct SensorStats {
  Welford false_alarm, delay, risk;
};

}  // namespace

int policy_alarm_time(const NetModel& net, const SimpleGame& game,
                      const JointPolicy& policy,
                      const std::vector<SensorPath>& paths) {
  std::vector<std::vector<double>> posts;
  posts.reserve(paths.size());
  for (int r = 0; r < net.size(); ++r)
    posts.push_back(posterior_path(paths[r], net.sensors[r]));
  return alarm_on_paths(net, game, policy, paths, posts);
}

McResult estimate_policy_risk(const NetModel& net, const SimpleGame& game,
                              const JointPolicy& policy, std::uint64_t reps,
                              std::uint64_t seed, int workers) {
  if (reps < 1) throw std::invalid_argument("reps must be at least 1");
  const int p = net.size();
  const int shards = workers < 1 ? 1 : workers;
  std::vector<std::vector<SensorStats>> shard_stats(
      shards, std::vector<SensorStats>(p));
  std::vector<std::uint64_t> shard_digest(shards, 0);

  parallel_for(static_cast<std::size_t>(shards), shards, [&](std::size_t sh) {
    const std::size_t lo = shard_begin(reps, shards, static_cast<int>(sh));
    const std::size_t hi = shard_end(reps, shards, static_cast<int>(sh));
    for (std::size_t rep = lo; rep < hi; ++rep) {
      const std::vector<SensorPath> paths =
          simulate_net(net, sub_seed(seed, kStreamRep, rep));
      std::vector<std::vector<double>> posts;
      posts.reserve(paths.size());
      for (int r = 0; r < p; ++r)
        posts.push_back(posterior_path(paths[r], net.sensors[r]));
      shard_digest[sh] ^= rep_digest(rep, paths);
      int alarm = alarm_on_paths(net, game, policy, paths, posts);
      if (alarm > net.horizon) alarm = net.horizon;  // forced terminal stop
      for (int r = 0; r < p; ++r) {
        const double fa = static_cast<std::uint64_t>(alarm) < paths[r].theta ? 1.0 : 0.0;
        const double delay =
            static_cast<std::uint64_t>(alarm) > paths[r].theta
                ? static_cast<double>(alarm - static_cast<int>(paths[r].theta))
                : 0.0;
        shard_stats[sh][r].false_alarm.add(fa);
        shard_stats[sh][r].delay.add(delay);
        shard_stats[sh][r].risk.add(fa + net.sensors[r].delay_cost * delay);
      }
    }
  });

  McResult result;
  result.per_sensor.resize(p);
  std::vector<SensorStats> merged(p);
  for (int sh = 0; sh < shards; ++sh) {
    result.path_digest ^= shard_digest[sh];
    for (int r = 0; r < p; ++r) {
      merged[r].false_alarm.merge(shard_stats[sh][r].false_alarm);
      merged[r].delay.merge(shard_stats[sh][r].delay);
      merged[r].risk.merge(shard_stats[sh][r].risk);
    }
  }
  for (int r = 0; r < p; ++r) {
    result.per_sensor[r].false_alarm = merged[r].false_alarm.estimate();
    result.per_sensor[r].delay = merged[r].delay.estimate();
    result.per_sensor[r].risk = merged[r].risk.estimate();
    result.per_sensor[r].reps = reps;
  }
  return result;
}

ComparisonReport compare_policies(const NetModel& net, const SimpleGame& game,
                                  const JointPolicy& first, const JointPolicy& second,
                                  std::uint64_t reps, std::uint64_t seed,
                                  int workers) {
  if (reps < 1) throw std::invalid_argument("reps must be at least 1");
  const int p = net.size();
  const int shards = workers < 1 ? 1 : workers;
  struct ShardAcc {
    std::vector<SensorStats> a, b;
    std::vector<Welford> diff;
    std::uint64_t digest = 0;
  };
  std::vector<ShardAcc> acc(shards);
  for (auto& sh : acc) {
    sh.a.resize(p);
    sh.b.resize(p);
    sh.diff.resize(p);
  }

  parallel_for(static_cast<std::size_t>(shards), shards, [&](std::size_t sh) {
    const std::size_t lo = shard_begin(reps, shards, static_cast<int>(sh));
    const std::size_t hi = shard_end(reps, shards, static_cast<int>(sh));
    for (std::size_t rep = lo; rep < hi; ++rep) {
      const std::vector<SensorPath> paths =
          simulate_net(net, sub_seed(seed, kStreamRep, rep));
      std::vector<std::vector<double>> posts;
      posts.reserve(paths.size());
      for (int r = 0; r < p; ++r)
        posts.push_back(posterior_path(paths[r], net.sensors[r]));
      acc[sh].digest ^= rep_digest(rep, paths);
      int ta = alarm_on_paths(net, game, first, paths, posts);
      int tb = alarm_on_paths(net, game, second, paths, posts);
      if (ta > net.horizon) ta = net.horizon;
      if (tb > net.horizon) tb = net.horizon;
      for (int r = 0; r < p; ++r) {
        auto risk_at = [&](int alarm) {
          const double fa =
              static_cast<std::uint64_t>(alarm) < paths[r].theta ? 1.0 : 0.0;
          const double delay =
              static_cast<std::uint64_t>(alarm) > paths[r].theta
                  ? static_cast<double>(alarm - static_cast<int>(paths[r].theta))
                  : 0.0;
          return std::array<double, 3>{fa, delay,
                                       fa + net.sensors[r].delay_cost * delay};
        };
        const auto ra = risk_at(ta);
        const auto rb = risk_at(tb);
        acc[sh].a[r].false_alarm.add(ra[0]);
        acc[sh].a[r].delay.add(ra[1]);
        acc[sh].a[r].risk.add(ra[2]);
        acc[sh].b[r].false_alarm.add(rb[0]);
        acc[sh].b[r].delay.add(rb[1]);
        acc[sh].b[r].risk.add(rb[2]);
        acc[sh].diff[r].add(ra[2] - rb[2]);
      }
    }
  });

  ComparisonReport report;
  report.reps = reps;
  report.first.resize(p);
  report.second.resize(p);
  report.risk_diff.resize(p);
  std::vector<SensorStats> ma(p), mb(p);
  std::vector<Welford> md(p);
  for (int sh = 0; sh < shards; ++sh) {
    report.path_digest ^= acc[sh].digest;
    for (int r = 0; r < p; ++r) {
      ma[r].false_alarm.merge(acc[sh].a[r].false_alarm);
      ma[r].delay.merge(acc[sh].a[r].delay);
      ma[r].risk.merge(acc[sh].a[r].risk);
      mb[r].false_alarm.merge(acc[sh].b[r].false_alarm);
      mb[r].delay.merge(acc[sh].b[r].delay);
      mb[r].risk.merge(acc[sh].b[r].risk);
      md[r].merge(acc[sh].diff[r]);
    }
  }
  for (int r = 0; r < p; ++r) {
    report.first[r] = {ma[r].false_alarm.estimate(), ma[r].delay.estimate(),
                       ma[r].risk.estimate(), reps};
    report.second[r] = {mb[r].false_alarm.estimate(), mb[r].delay.estimate(),
                        mb[r].risk.estimate(), reps};
    report.risk_diff[r] = md[r].estimate();
  }
  return report;
}

}  // namespace disorder
