#include "filament/spatial_grid.hpp"

#include <algorithm>
#include <cmath>

#include "filament/error.hpp"

namespace filament {

SpatialGrid::SpatialGrid(std::span<const Point2> positions, double cell_size)
    : positions_(positions.begin(), positions.end()), cell_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw Error("spatial grid: cell size must be positive and finite");
  }
  if (positions_.empty()) return;

  const BoundingBox box = bounding_box(positions_);
  origin_ = box.lo;
  // Cap the number of cells at a few per item so sparse, wide inputs do not
  // allocate huge empty grids.
  const double max_cells = 4.0 * static_cast<double>(positions_.size()) + 64.0;
  auto dims = [&](double c) {
    return std::pair<double, double>{std::floor(box.width() / c) + 1.0,
                                     std::floor(box.height() / c) + 1.0};
  };
  while (true) {
    auto [fx, fy] = dims(cell_);
    if (fx * fy <= max_cells) {
      nx_ = static_cast<std::int64_t>(fx);
      ny_ = static_cast<std::int64_t>(fy);
      break;
    }
    cell_ *= 1.5;
  }

  const std::size_t ncell = static_cast<std::size_t>(nx_ * ny_);
  std::vector<std::uint32_t> cell_index(positions_.size());
  start_.assign(ncell + 1, 0);
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    const auto [ix, iy] = cell_of(positions_[i]);
    cell_index[i] = static_cast<std::uint32_t>(iy * nx_ + ix);
    ++start_[cell_index[i] + 1];
  }
  for (std::size_t c = 0; c < ncell; ++c) start_[c + 1] += start_[c];
  items_.resize(positions_.size());
  std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    items_[fill[cell_index[i]]++] = static_cast<std::uint32_t>(i);
  }
}

std::pair<std::int64_t, std::int64_t> SpatialGrid::cell_of(Point2 p) const {
  auto clampi = [](double v, std::int64_t n) {
    if (!(v > 0.0)) return std::int64_t{0};
    const double f = std::floor(v);
    if (f >= static_cast<double>(n - 1)) return n - 1;
    return static_cast<std::int64_t>(f);
  };
  return {clampi((p.x - origin_.x) / cell_, nx_), clampi((p.y - origin_.y) / cell_, ny_)};
}

SpatialGrid::Hit SpatialGrid::nearest(Point2 p) const {
  return nearest_by(p, 0.0, [&](std::size_t i) { return distance(positions_[i], p); });
}

SpatialGrid::Hit SpatialGrid::nearest_excluding(Point2 p, std::size_t self) const {
  return nearest_by(p, 0.0, [&](std::size_t i) {
    return i == self ? std::numeric_limits<double>::infinity() : distance(positions_[i], p);
  });
}

}  // namespace filament
