#pragma once

// Union-of-balls support estimator S^ = union B(Y_i, eps) and its boundary as
// an exact arrangement of circular arcs.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "filament/geom.hpp"
#include "filament/model.hpp"
#include "filament/spatial_grid.hpp"

namespace filament {

enum class EpsilonMethod { nn_max, rate_formula };

struct EpsilonRule {
  EpsilonMethod method = EpsilonMethod::nn_max;
  /// Rate-formula constant; must exceed sqrt(2 / (chi pi)) with chi = 1/4.
  double constant = 1.6;
  double alpha = 0.5;
};

/// max_i min_{j != i} |Y_i - Y_j|. Throws for fewer than 2 points.
double nn_max_epsilon(std::span<const Point2> points);

/// C (log n / n)^(1 / (2 + alpha)).
double rate_epsilon(std::size_t n, double constant, double alpha);

double select_epsilon(std::span<const Point2> points, const EpsilonRule& rule);

class BallUnion {
 public:
  BallUnion(std::vector<Point2> centers, double epsilon);

  const std::vector<Point2>& centers() const { return centers_; }
  std::size_t size() const { return centers_.size(); }
  double epsilon() const { return epsilon_; }
  const SpatialGrid& grid() const { return *grid_; }

  /// Components of the overlap graph (centers closer than 2 eps).
  std::size_t component_count() const { return component_count_; }
  std::size_t component_of(std::size_t ball) const { return component_[ball]; }
  std::vector<std::vector<std::size_t>> components() const;

  bool contains(Point2 y) const;
  /// Distance from y to the nearest center.
  double nearest_center_distance(Point2 y) const;

  BoundingBox bounds() const;

 private:
  std::vector<Point2> centers_;
  double epsilon_;
  std::shared_ptr<const SpatialGrid> grid_;
  std::vector<std::size_t> component_;
  std::size_t component_count_ = 0;
};

struct BoundaryArc {
  Arc arc;
  std::size_t ball = 0;
  std::size_t loop = 0;
  double loop_offset = 0.0;  // arclength of the arc start along its loop
};

struct BoundaryLoop {
  std::vector<std::size_t> arcs;  // cyclic traversal order (interior on the left)
  double length = 0.0;
  double signed_area = 0.0;  // > 0 for outer boundaries, < 0 for holes
  std::size_t component = 0;
  bool is_hole() const { return signed_area < 0.0; }
};

class BoundaryArrangement {
 public:
  BoundaryArrangement() = default;
  BoundaryArrangement(std::vector<BoundaryArc> arcs, std::vector<BoundaryLoop> loops);

  const std::vector<BoundaryArc>& arcs() const { return arcs_; }
  const std::vector<BoundaryLoop>& loops() const { return loops_; }
  double total_length() const;

  /// Point at arclength s along a loop (wrapped to [0, length)).
  Point2 loop_point(std::size_t loop, double s) const;
  /// Total signed turning of a loop; +-2pi for a simple closed curve.
  double loop_turning(std::size_t loop) const;
  /// Loop as a closed polyline with spacing <= `spacing`.
  Polyline loop_polyline(std::size_t loop, double spacing) const;
  /// Samples of every arc with spacing <= `spacing` (arc endpoints included).
  std::vector<Point2> sample(double spacing) const;
  /// A point outside S^ that the loop encloses just beyond its longest arc.
  /// Only meaningful for hole loops.
  Point2 hole_probe(std::size_t loop) const;

 private:
  std::vector<BoundaryArc> arcs_;
  std::vector<BoundaryLoop> loops_;
};

/// Uncovered arcs of every ball, stitched into closed loops. Throws
/// "degenerate arrangement" when endpoints cannot be matched within 1e-9.
BoundaryArrangement boundary(const BallUnion& balls);

/// Nearest-arc queries over a fixed arc list.
class ArcIndex {
 public:
  ArcIndex() = default;
  explicit ArcIndex(std::vector<Arc> arcs);

  struct Hit {
    std::size_t arc = SpatialGrid::npos;
    Point2 point;
    double distance = std::numeric_limits<double>::infinity();
  };
  Hit nearest(Point2 y) const;
  const std::vector<Arc>& arcs() const { return arcs_; }
  bool empty() const { return arcs_.empty(); }

 private:
  std::vector<Arc> arcs_;
  double max_radius_ = 0.0;
  SpatialGrid grid_;
};

/// S^ together with its boundary and a distance index; the object every
/// downstream estimator consumes.
class SupportEstimate {
 public:
  /// Builds the union and its boundary; on a degenerate arrangement eps is
  /// perturbed by 1e-9 relative and the boundary rebuilt once.
  static std::shared_ptr<const SupportEstimate> build(std::vector<Point2> points, double epsilon);

  const BallUnion& balls() const { return balls_; }
  const BoundaryArrangement& arrangement() const { return arrangement_; }
  double epsilon() const { return balls_.epsilon(); }

  bool contains(Point2 y) const { return balls_.contains(y); }
  /// Empirical EDT: d(y, boundary of S^), exact for any y.
  double distance_to_boundary(Point2 y) const;
  ArcIndex::Hit nearest_boundary_point(Point2 y) const { return index_.nearest(y); }

 private:
  SupportEstimate(BallUnion balls, BoundaryArrangement arrangement);
  BallUnion balls_;
  BoundaryArrangement arrangement_;
  ArcIndex index_;
};

double distance_to_boundary(const SupportEstimate& support, Point2 y);

/// Hausdorff distance between the true boundary and the estimated boundary,
/// both directed parts. One side is sampled at `spacing`, distances to the
/// other side are exact, so each part is accurate to within `spacing`.
struct BoundaryError {
  double hausdorff = 0.0;
  double truth_to_estimate = 0.0;
  double estimate_to_truth = 0.0;
};
BoundaryError boundary_error(const SupportModel& truth, const SupportEstimate& estimate, double spacing);

}  // namespace filament
