#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "disorder/model.hpp"

namespace disorder {

// Strictly increasing grid over [0,1] with endpoints pinned to 0 and 1.
// Nodal lookups are exact: locate() of a grid value returns weight 0 on the
// containing node, so interpolation reproduces nodal values bit-for-bit.
class PiGrid {
 public:
  static PiGrid uniform(int points);
  static PiGrid from_points(std::vector<double> points);

  // All posterior values reachable from pi0 within `depth` transitions,
  // together with the endpoints. On such a grid every value lookup along a
  // realizable path of length <= depth is nodal, which makes desk-scale
  // dynamic programming exact.
  static PiGrid reachable_closure(const SensorModel& model, int depth);

  std::size_t size() const { return pts_.size(); }
  double operator[](std::size_t k) const { return pts_[k]; }
  const std::vector<double>& points() const { return pts_; }

  struct Cell {
    std::size_t lo;  // left node index
    double t;        // weight of the right node, 0 on exact hits
  };
  Cell locate(double v) const;

  // Linear interpolation of nodal values at v.
  double interp(std::span<const double> nodal, double v) const {
    const Cell c = locate(v);
    if (c.t == 0.0) return nodal[c.lo];
    return (1.0 - c.t) * nodal[c.lo] + c.t * nodal[c.lo + 1];
  }

 private:
  std::vector<double> pts_;
};

}  // namespace disorder
