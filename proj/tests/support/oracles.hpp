#pragma once

// Independent reference implementations used to check the library. Every
// oracle here is deliberately naive (dense sampling, brute force, a second
// algorithm) and shares no code with filament_core beyond the value types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "filament/extract.hpp"
#include "filament/geom.hpp"
#include "filament/sampler.hpp"

namespace oracle {

using filament::Arc;
using filament::Point2;

/// Minimum distance from p to `samples` + 1 evenly spaced points of the arc.
double arc_distance_dense(Point2 p, const Arc& arc, std::size_t samples = 100000);

/// Uncovered measure of the circle given (start, span) cover intervals,
/// estimated by testing `cells` midpoints.
double uncovered_measure_raster(const std::vector<std::pair<double, double>>& cover, std::size_t cells = 10000);

/// O(|a| |b|) symmetric Hausdorff distance.
double hausdorff_double_loop(const std::vector<Point2>& a, const std::vector<Point2>& b);

/// Prim's algorithm on a dense adjacency matrix. Returns the total weight and
/// the edges as (min id, max id) pairs, sorted.
struct MstResult {
  double weight = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};
MstResult prim_mst(std::size_t nodes, const std::vector<filament::Edge>& edges);

/// Winding number from the difference of absolute polar angles of successive
/// vertices, each wrapped to (-pi, pi].
int winding_angle_sum(const std::vector<Point2>& closed_polygon, Point2 p);

/// Parity of the number of crossings of the rightward ray from p.
int crossing_parity(const std::vector<Point2>& closed_polygon, Point2 p);

/// Brute-force minimum distance from p to a point list.
double min_distance(Point2 p, const std::vector<Point2>& pts);

/// Minimum path weight between a and b by enumerating every simple path
/// (graphs of at most 10 nodes).
double brute_force_shortest(std::size_t nodes, const std::vector<filament::Edge>& edges, std::size_t a,
                            std::size_t b);

/// Radial CDF of noise with planar density prop. to (sigma - r)^beta, by
/// composite Simpson quadrature of r (sigma - r)^beta.
double radial_cdf_quadrature(double r, double sigma, double beta);

/// Kolmogorov-Smirnov statistic of `sample` against `cdf`.
template <typename Cdf>
double ks_statistic(std::vector<double> sample, Cdf cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
  }
  return d;
}

/// Synthetic Gamma^ regions with exact membership, sampled on a grid of
/// spacing `step` (annulus: |r - radius| <= half_width around `center`;
/// stadium: within half_width of the segment a-b).
filament::RegionView annulus_region(Point2 center, double radius, double half_width, double epsilon,
                                    double step);
filament::RegionView stadium_region(Point2 a, Point2 b, double half_width, double epsilon, double step);

/// Ellipse perimeter by adaptive Simpson quadrature.
double ellipse_perimeter(double a, double b);

/// Minimum circumradius over all triples of `pts` (O(m^3)).
double brute_force_thickness(const std::vector<Point2>& pts);

}  // namespace oracle
