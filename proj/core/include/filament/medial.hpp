#pragma once

// Medial estimator: split the boundary of S^ into two sides, join each point
// of one side to its nearest point on the other, keep the midpoints.

#include <cstddef>
#include <vector>

#include "filament/geom.hpp"
#include "filament/support.hpp"

namespace filament {

/// Ordered run of arcs, either a closed loop or an open chain.
class BoundaryChain {
 public:
  BoundaryChain() = default;
  BoundaryChain(std::vector<Arc> arcs, bool closed);

  const std::vector<Arc>& arcs() const { return arcs_; }
  bool closed() const { return closed_; }
  bool empty() const { return arcs_.empty(); }
  double length() const { return length_; }

  /// Point at arclength s in [0, length()].
  Point2 point_at(double s) const;
  /// Points at equal arclength steps <= spacing (both ends for open chains).
  std::vector<Point2> sample(double spacing) const;

 private:
  std::vector<Arc> arcs_;
  std::vector<double> offsets_;
  bool closed_ = false;
  double length_ = 0.0;
};

enum class SplitProvenance { closed_native, open_split };

struct SplitBoundary {
  BoundaryChain side0;
  BoundaryChain side1;
  SplitProvenance provenance = SplitProvenance::closed_native;
  std::vector<BoundaryChain> cut_sets;  // [E0], [E1] for the open case
};

/// Outer loop -> side0, hole loop -> side1. Loops enclosing less than
/// pi eps^2 are ignored. Throws "not a closed-tube topology" unless one outer
/// and one hole loop remain.
SplitBoundary split_closed(const BoundaryArrangement& arrangement, double epsilon = 0.0);

struct EndpointSplitConfig {
  double c = 17.0;
  double sigma_hat = 0.0;
  double epsilon = 0.0;
};

/// Removes the connected completions of the boundary inside B(x0, sigma^ + c
/// eps) and B(x1, sigma^ + c eps). side0 runs from the cap at x0 to the cap at
/// x1 along the loop. Pinhole loops (area below pi eps^2) are ignored.
/// Throws "cap separation failed".
SplitBoundary split_open(const BoundaryArrangement& arrangement, Point2 x0, Point2 x1,
                         const EndpointSplitConfig& config);

/// a(c, eps) and b from the cap-coverage argument, with measured eps.
struct CapConstants {
  double a = 0.0;
  double b = 0.0;
};
CapConstants cap_constants(double c, double epsilon, double sigma, double thickness, double arclength);

struct MedialSample {
  Point2 y;      // on side0
  Point2 y_hat;  // nearest point on side1
  Point2 mid;
};

struct MedialEstimate {
  std::vector<MedialSample> samples;
  std::vector<std::size_t> breakpoints;  // k where |mid_k - mid_{k-1}| > 3 spacing
  bool closed = false;
  double spacing = 0.0;

  std::vector<Point2> midpoints() const;
};

MedialEstimate medial_fit(const SplitBoundary& split, double spacing);

/// f*: the midpoints joined in order. Throws "completion not simple".
Polyline complete(const MedialEstimate& estimate);

}  // namespace filament
