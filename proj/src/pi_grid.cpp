#include "disorder/pi_grid.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "disorder/posterior.hpp"

namespace disorder {

PiGrid PiGrid::uniform(int points) {
  if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
  PiGrid g;
  g.pts_.resize(points);
  for (int k = 0; k < points; ++k)
    g.pts_[k] = static_cast<double>(k) / (points - 1);
  g.pts_.front() = 0.0;
  g.pts_.back() = 1.0;
  return g;
}

PiGrid PiGrid::from_points(std::vector<double> points) {
  if (points.size() < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (points.front() != 0.0 || points.back() != 1.0)
    throw std::invalid_argument("grid must span [0,1]");
  for (std::size_t k = 1; k < points.size(); ++k)
    if (!(points[k] > points[k - 1]))
      throw std::invalid_argument("grid points must be strictly increasing");
  PiGrid g;
  g.pts_ = std::move(points);
  return g;
}

PiGrid PiGrid::reachable_closure(const SensorModel& model, int depth) {
  // BFS over (observation, posterior) pairs; only the posterior projection
  // is kept. Exact double equality is the dedup criterion on purpose: a
  // replay of the same update arithmetic lands on the same bits.
  std::set<std::pair<int, double>> seen;
  std::vector<std::pair<int, double>> frontier;
  frontier.emplace_back(model.initial_state, model.prior.pi0);
  seen.insert(frontier.front());
  std::set<double> values{0.0, 1.0, model.prior.pi0};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::pair<int, double>> next;
    for (const auto& [x, pi] : frontier) {
      for (int y = 0; y < model.states(); ++y) {
        if (predictive_prob(model, x, pi, y) <= 0.0) continue;
        const double pi2 = posterior_update(pi, x, y, model);
        values.insert(pi2);
        if (seen.insert({y, pi2}).second) next.emplace_back(y, pi2);
      }
    }
    frontier = std::move(next);
  }
  PiGrid g;
  g.pts_.assign(values.begin(), values.end());
  return g;
}

PiGrid::Cell PiGrid::locate(double v) const {
  const auto it = std::upper_bound(pts_.begin(), pts_.end(), v);
  const std::size_t hi = static_cast<std::size_t>(it - pts_.begin());
  if (hi == 0) return {0, 0.0};  // v <= 0
  if (hi == pts_.size()) return {pts_.size() - 1, 0.0};  // v >= 1
  const std::size_t lo = hi - 1;
  if (pts_[lo] == v) return {lo, 0.0};
  return {lo, (v - pts_[lo]) / (pts_[lo + 1] - pts_[lo])};
}

}  // namespace disorder
