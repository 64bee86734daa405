#include "filament/declutter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "filament/error.hpp"

namespace filament {

double biweight(Point2 u) {
  const double r2 = norm2(u);
  if (r2 >= 1.0) return 0.0;
  const double t = 1.0 - r2;
  return 3.0 / std::numbers::pi * t * t;
}

double auto_bandwidth(std::span<const Point2> points) {
  if (points.size() < 2) throw Error("bandwidth needs at least 2 points");
  const double n = static_cast<double>(points.size());
  Point2 mean;
  for (Point2 p : points) mean += p;
  mean = mean / n;
  double sxx = 0.0, syy = 0.0;
  for (Point2 p : points) {
    sxx += (p.x - mean.x) * (p.x - mean.x);
    syy += (p.y - mean.y) * (p.y - mean.y);
  }
  const double sd = 0.5 * (std::sqrt(sxx / (n - 1.0)) + std::sqrt(syy / (n - 1.0)));
  return std::pow(n, -1.0 / 6.0) * sd;
}

Declutterer Declutterer::fit(std::vector<Point2> points, std::optional<BoundingBox> clutter_region,
                             std::optional<double> bandwidth) {
  if (points.size() < 20) throw Error("declutter needs at least 20 points");
  if (std::all_of(points.begin(), points.end(), [&](Point2 p) { return p == points.front(); })) {
    throw Error("declutter input is degenerate (all points identical)");
  }
  Declutterer d;
  d.bandwidth_ = bandwidth ? *bandwidth : auto_bandwidth(points);
  if (!(d.bandwidth_ > 0.0) || !std::isfinite(d.bandwidth_)) throw Error("bandwidth must be positive");
  if (clutter_region) {
    d.region_ = *clutter_region;
  } else {
    d.region_ = bounding_box(points);
    d.region_.lo = d.region_.lo - Point2{0.05 * d.region_.width(), 0.05 * d.region_.height()};
    d.region_.hi = d.region_.hi + Point2{0.05 * d.region_.width(), 0.05 * d.region_.height()};
  }
  d.volume_ = d.region_.area();
  if (!(d.volume_ > 0.0)) throw Error("clutter region must have positive area");
  d.points_ = std::move(points);
  d.grid_ = SpatialGrid(d.points_, d.bandwidth_);
  return d;
}

double Declutterer::density(Point2 y) const {
  double sum = 0.0;
  const double inv = 1.0 / bandwidth_;
  grid_.for_each_within(y, bandwidth_, [&](std::size_t i) { sum += biweight((y - points_[i]) * inv); });
  return sum / (static_cast<double>(points_.size()) * bandwidth_ * bandwidth_);
}

std::vector<bool> Declutterer::classify(std::span<const Point2> ys) const {
  std::vector<bool> out;
  out.reserve(ys.size());
  for (Point2 y : ys) out.push_back(is_filament(y));
  return out;
}

}  // namespace filament
