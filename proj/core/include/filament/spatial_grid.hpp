#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "filament/geom.hpp"

namespace filament {

/// Uniform bucket grid over a fixed set of positions. Items keep the index
/// they had in the input span. Queries are exact; the grid only prunes.
class SpatialGrid {
 public:
  SpatialGrid() = default;
  SpatialGrid(std::span<const Point2> positions, double cell_size);

  std::size_t size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }
  double cell_size() const { return cell_; }
  const std::vector<Point2>& positions() const { return positions_; }

  struct Hit {
    std::size_t index = npos;
    double distance = std::numeric_limits<double>::infinity();
  };
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Nearest stored position to `p` (ties broken by lowest index).
  Hit nearest(Point2 p) const;

  /// Nearest stored position other than item `self`.
  Hit nearest_excluding(Point2 p, std::size_t self) const;

  /// Calls fn(index) for every item whose position is within `radius` of p
  /// (inclusive). Items are visited in cell order.
  template <typename Fn>
  void for_each_within(Point2 p, double radius, Fn&& fn) const {
    if (positions_.empty()) return;
    const double r2 = radius * radius;
    const auto [ix0, iy0] = cell_of({p.x - radius, p.y - radius});
    const auto [ix1, iy1] = cell_of({p.x + radius, p.y + radius});
    for (std::int64_t iy = iy0; iy <= iy1; ++iy) {
      for (std::int64_t ix = ix0; ix <= ix1; ++ix) {
        const std::size_t c = static_cast<std::size_t>(iy * nx_ + ix);
        for (std::uint32_t k = start_[c]; k < start_[c + 1]; ++k) {
          const std::size_t idx = items_[k];
          if (norm2(positions_[idx] - p) <= r2) fn(idx);
        }
      }
    }
  }

  /// Generic best-first search. `eval(index)` returns a distance for an item
  /// that is never smaller than |position - p| - slack. Returns the minimum
  /// of eval over all items.
  template <typename Eval>
  Hit nearest_by(Point2 p, double slack, Eval&& eval) const {
    Hit best;
    if (positions_.empty()) return best;
    const auto [cx, cy] = cell_of(p);
    const std::int64_t max_ring = std::max(nx_, ny_);
    for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
      const double lower = static_cast<double>(ring - 1) * cell_ - slack;
      if (ring > 0 && best.distance <= lower) break;
      visit_ring(cx, cy, ring, [&](std::size_t idx) {
        const double d = eval(idx);
        if (d < best.distance || (d == best.distance && idx < best.index)) {
          best.distance = d;
          best.index = idx;
        }
      });
    }
    return best;
  }

 private:
  std::pair<std::int64_t, std::int64_t> cell_of(Point2 p) const;

  template <typename Fn>
  void visit_cell(std::int64_t ix, std::int64_t iy, Fn& fn) const {
    if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) return;
    const std::size_t c = static_cast<std::size_t>(iy * nx_ + ix);
    for (std::uint32_t k = start_[c]; k < start_[c + 1]; ++k) fn(items_[k]);
  }

  template <typename Fn>
  void visit_ring(std::int64_t cx, std::int64_t cy, std::int64_t ring, Fn&& fn) const {
    if (ring == 0) {
      visit_cell(cx, cy, fn);
      return;
    }
    for (std::int64_t ix = cx - ring; ix <= cx + ring; ++ix) {
      visit_cell(ix, cy - ring, fn);
      visit_cell(ix, cy + ring, fn);
    }
    for (std::int64_t iy = cy - ring + 1; iy <= cy + ring - 1; ++iy) {
      visit_cell(cx - ring, iy, fn);
      visit_cell(cx + ring, iy, fn);
    }
  }

  std::vector<Point2> positions_;
  double cell_ = 1.0;
  Point2 origin_;
  std::int64_t nx_ = 0;
  std::int64_t ny_ = 0;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> items_;
};

}  // namespace filament
