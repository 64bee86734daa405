#pragma once

// Planar primitives shared by every stage of the pipeline: points, circular
// arcs, angular interval sets on the circle, polylines, Hausdorff distance and
// winding numbers.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace filament {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2& operator+=(Point2 o) { x += o.x; y += o.y; return *this; }
  constexpr Point2& operator-=(Point2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr Point2& operator*=(double s) { x *= s; y *= s; return *this; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
constexpr Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
constexpr double norm2(Point2 a) { return dot(a, a); }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
constexpr Point2 perp(Point2 a) { return {-a.y, a.x}; }  // rotate +90 degrees
constexpr Point2 midpoint(Point2 a, Point2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
inline Point2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Wraps any angle into [0, 2pi).
double normalize_angle(double a);

/// CCW angular distance from `from` to `to`, in [0, 2pi).
double ccw_delta(double from, double to);

/// Axis-aligned box; `empty()` until the first point is added.
struct BoundingBox {
  Point2 lo{+INFINITY, +INFINITY};
  Point2 hi{-INFINITY, -INFINITY};

  void add(Point2 p);
  void inflate(double margin);
  bool empty() const { return lo.x > hi.x; }
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  double area() const { return empty() ? 0.0 : width() * height(); }
  bool contains(Point2 p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
};

BoundingBox bounding_box(std::span<const Point2> pts);

/// A CCW circular arc. `start_angle` and `end_angle` lie in [0, 2pi); the arc
/// sweeps CCW from start to end. A full circle has `full_circle` set and
/// ignores `end_angle`.
struct Arc {
  Point2 center;
  double radius = 0.0;
  double start_angle = 0.0;
  double end_angle = 0.0;
  bool full_circle = false;

  static Arc circle(Point2 c, double r);
  static Arc from_span(Point2 c, double r, double start, double span);

  /// Angular extent in (0, 2pi].
  double span() const;
  double length() const { return radius * span(); }
  Point2 point_at_angle(double a) const { return center + radius * unit_vector(a); }
  Point2 start_point() const { return point_at_angle(start_angle); }
  Point2 end_point() const { return point_at_angle(start_angle + span()); }
  /// Point at arclength `s` from the start, s in [0, length()].
  Point2 point_at_length(double s) const { return point_at_angle(start_angle + s / radius); }
  /// True if the CCW angle `a` lies within the arc's span.
  bool contains_angle(double a) const;
  /// Unit tangent in the direction of travel at angle `a`.
  Point2 tangent_at_angle(double a) const { return perp(unit_vector(a)); }
};

/// Closest point of an arc to `p`. `t_length` is the arclength offset of the
/// returned point from the arc start.
struct ArcProjection {
  Point2 point;
  double distance = 0.0;
  double t_length = 0.0;
};

ArcProjection project_onto_arc(Point2 p, const Arc& arc);
double point_to_arc_distance(Point2 p, const Arc& arc);

/// One CCW interval [lo, hi] with 0 <= lo < hi <= 2pi (no wrap; wrapping
/// intervals are stored as two pieces).
struct AngularInterval {
  double lo = 0.0;
  double hi = 0.0;
  double measure() const { return hi - lo; }
};

/// Disjoint, sorted set of angular intervals on the circle. Endpoints closer
/// than `kAngleMergeTolerance` are merged.
class AngularIntervalSet {
 public:
  static constexpr double kAngleMergeTolerance = 1e-9;

  AngularIntervalSet() = default;
  static AngularIntervalSet full();

  /// Adds the CCW interval starting at `start` with extent `span` (any sign
  /// of `start`; span clamped to [0, 2pi]).
  void add(double start, double span);
  void add_set(const AngularIntervalSet& other);

  const std::vector<AngularInterval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  bool is_full() const;
  double measure() const;
  bool contains(double angle) const;

  /// Complement on the circle.
  AngularIntervalSet complement() const;

  /// Groups the intervals into CCW spans (start, extent), joining a piece
  /// ending at 2pi with a piece starting at 0.
  struct Span {
    double start;
    double extent;
  };
  std::vector<Span> spans() const;

 private:
  void normalize();
  std::vector<AngularInterval> intervals_;
};

/// Uncovered part of a circle given the union of angular intervals covering
/// it. An empty result means the circle is fully covered.
AngularIntervalSet subtract_angular_cover(const AngularIntervalSet& cover);

struct Polyline {
  std::vector<Point2> vertices;
  bool closed = false;

  std::size_t size() const { return vertices.size(); }
  std::size_t segment_count() const;
  double length() const;
  /// Points every `spacing` along the polyline, always including vertices.
  std::vector<Point2> sample(double spacing) const;
  /// Throws unless there are >= 2 finite vertices and, if closed, first != last.
  void validate() const;
};

double point_segment_distance(Point2 p, Point2 a, Point2 b);
Point2 closest_point_on_segment(Point2 p, Point2 a, Point2 b);

/// Proper or touching intersection of closed segments [a,b] and [c,d].
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d);

/// True if no two non-adjacent segments of the polyline intersect.
bool is_simple(const Polyline& poly);

/// Signed winding number of a closed polyline around `p`, from the sum of
/// subtended angles. Throws "degenerate query" if `p` is within 1e-12 of the
/// curve.
int winding_number(const Polyline& curve, Point2 p);

/// Directed Hausdorff distance sup_{a in A} inf_{b in B} |a - b|.
double directed_hausdorff(std::span<const Point2> a, std::span<const Point2> b);

/// Symmetric Hausdorff distance between finite point sets. Throws "empty set".
double hausdorff_distance(std::span<const Point2> a, std::span<const Point2> b);

/// Circumradius of the triangle abc; +inf for collinear or repeated points.
double circumradius(Point2 a, Point2 b, Point2 c);

}  // namespace filament
