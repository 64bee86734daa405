#pragma once

// Kernel density classifier separating filament points from uniform
// background clutter: filament iff m^(y) >= 2 / V.

#include <optional>
#include <span>
#include <vector>

#include "filament/geom.hpp"
#include "filament/spatial_grid.hpp"

namespace filament {

/// Biweight kernel (3 / pi)(1 - |u|^2)^2 on the unit disk.
double biweight(Point2 u);

/// n^(-1/6) times the mean marginal standard deviation.
double auto_bandwidth(std::span<const Point2> points);

class Declutterer {
 public:
  /// Throws for n < 20, identical points, or a region without area. The
  /// region defaults to the data bounding box inflated by 5% per side.
  static Declutterer fit(std::vector<Point2> points, std::optional<BoundingBox> clutter_region = {},
                         std::optional<double> bandwidth = {});

  double density(Point2 y) const;
  double bandwidth() const { return bandwidth_; }
  double volume() const { return volume_; }
  double q0() const { return 1.0 / volume_; }
  const BoundingBox& region() const { return region_; }

  bool is_filament(Point2 y) const { return density(y) >= 2.0 * q0(); }
  std::vector<bool> classify(std::span<const Point2> ys) const;

 private:
  std::vector<Point2> points_;
  SpatialGrid grid_;
  double bandwidth_ = 0.0;
  BoundingBox region_;
  double volume_ = 0.0;
};

}  // namespace filament
