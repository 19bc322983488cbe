#include "disorder/exact_eval.hpp"

#include <stdexcept>

#include "disorder/posterior.hpp"

namespace disorder {

namespace {

// Per-sensor joint-law weights along one observation prefix x_{0:n}:
//   a = P(x_{0:n}, theta > n)
//   b = P(x_{0:n}, theta <= n)
//   d = sum_{k<n} P(x_{0:n}, theta <= k)   (delay credit at a stop at n)
// pi is the filter posterior and r its running sum over k < n; those two
// deliberately come from the filter recursion rather than from b/(a+b), so
// the posterior-form risk exercises the implementation under test.
struct SensorWeights {
  double a, b, d, pi, r;
};

struct Walker {
  const NetModel& net;
  const SimpleGame& game;
  const JointPolicy& policy;
  std::size_t budget;
  std::size_t nodes = 0;
  int p;
  std::vector<PlayerRisk> out;

  std::vector<int> x;  // stack of current observations, one per sensor

  Walker(const NetModel& net_, const SimpleGame& game_, const JointPolicy& policy_,
         std::size_t budget_)
      : net(net_), game(game_), policy(policy_), budget(budget_),
        p(net_.size()), out(static_cast<std::size_t>(net_.size())), x(net_.size()) {}

  void accumulate_stop(const std::vector<SensorWeights>& w) {
    double total = 1.0;
    for (int r = 0; r < p; ++r) total *= w[r].a + w[r].b;
    for (int i = 0; i < p; ++i) {
      double others = 1.0;
      for (int r = 0; r < p; ++r)
        if (r != i) others *= w[r].a + w[r].b;
      out[i].false_alarm += w[i].a * others;
      out[i].delay += w[i].d * others;
      out[i].risk_posterior_form +=
          ((1.0 - w[i].pi) + net.sensors[i].delay_cost * w[i].r) * total;
    }
  }

  void visit(int n, std::vector<SensorWeights>& w, Coalition latch) {
    if (++nodes > budget) throw TreeTooLarge(nodes, budget);
    std::vector<double> pi(static_cast<std::size_t>(p));
    for (int r = 0; r < p; ++r) pi[r] = w[r].pi;
    Coalition votes = policy.votes(n, std::span<const int>(x), std::span<const double>(pi));
    if (policy.persistent) votes |= latch;
    const bool stop = n == net.horizon || game.wins(votes);
    if (stop) {
      accumulate_stop(w);
      return;
    }
    // Recurse over joint next symbols with an odometer; sensors advance
    // independently, so per-sensor child weights factor.
    std::vector<SensorWeights> child(w);
    std::vector<int> y(static_cast<std::size_t>(p), 0);
    recurse_symbols(0, n, w, child, y, votes);
  }

  void recurse_symbols(int r, int n, const std::vector<SensorWeights>& w,
                       std::vector<SensorWeights>& child, std::vector<int>& y,
                       Coalition latch) {
    if (r == p) {
      std::vector<int> saved(x);
      for (int s = 0; s < p; ++s) x[s] = y[s];
      visit(n + 1, child, latch);
      x = saved;
      return;
    }
    const SensorModel& m = net.sensors[r];
    const SensorWeights& cur = w[r];
    for (int sym = 0; sym < m.states(); ++sym) {
      const double f0 = m.pre.at(x[r], sym);
      const double f1 = m.post.at(x[r], sym);
      SensorWeights next;
      next.a = cur.a * m.prior.p * f0;
      next.b = (cur.b + cur.a * m.prior.q) * f1;
      if (next.a + next.b <= 0.0) continue;  // zero-probability branch
      next.d = (cur.d + cur.b) * f1;
      next.pi = posterior_update(cur.pi, x[r], sym, m);
      next.r = cur.r + cur.pi;
      child[r] = next;
      y[r] = sym;
      recurse_symbols(r + 1, n, w, child, y, latch);
    }
  }
};

}  // namespace

std::vector<PlayerRisk> joint_policy_risk_exact(const NetModel& net,
                                                const SimpleGame& game,
                                                const JointPolicy& policy,
                                                std::size_t node_budget) {
  if (net.size() < 1) throw std::invalid_argument("net must have at least one sensor");
  if (game.players() != net.size())
    throw std::invalid_argument("game size does not match sensor count");
  Walker walker(net, game, policy, node_budget);
  std::vector<SensorWeights> w(static_cast<std::size_t>(net.size()));
  for (int r = 0; r < net.size(); ++r) {
    const SensorModel& m = net.sensors[r];
    walker.x[r] = m.initial_state;
    w[r] = SensorWeights{1.0 - m.prior.pi0, m.prior.pi0, 0.0, m.prior.pi0, 0.0};
  }
  walker.visit(0, w, 0);
  for (int i = 0; i < net.size(); ++i) {
    walker.out[i].risk = walker.out[i].false_alarm +
                         net.sensors[i].delay_cost * walker.out[i].delay;
  }
  return walker.out;
}

}  // namespace disorder
