#include "filament/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "filament/error.hpp"
#include "filament/spatial_grid.hpp"

namespace filament {

double normalize_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double ccw_delta(double from, double to) { return normalize_angle(to - from); }

void BoundingBox::add(Point2 p) {
  lo.x = std::min(lo.x, p.x);
  lo.y = std::min(lo.y, p.y);
  hi.x = std::max(hi.x, p.x);
  hi.y = std::max(hi.y, p.y);
}

void BoundingBox::inflate(double margin) {
  lo.x -= margin;
  lo.y -= margin;
  hi.x += margin;
  hi.y += margin;
}

BoundingBox bounding_box(std::span<const Point2> pts) {
  BoundingBox box;
  for (Point2 p : pts) box.add(p);
  return box;
}

// ---------------------------------------------------------------------------
// Arcs

Arc Arc::circle(Point2 c, double r) {
  return Arc{c, r, 0.0, 0.0, true};
}

Arc Arc::from_span(Point2 c, double r, double start, double span) {
  if (span >= kTwoPi - AngularIntervalSet::kAngleMergeTolerance) return circle(c, r);
  const double s = normalize_angle(start);
  return Arc{c, r, s, normalize_angle(s + span), false};
}

double Arc::span() const {
  if (full_circle) return kTwoPi;
  return ccw_delta(start_angle, end_angle);
}

bool Arc::contains_angle(double a) const {
  if (full_circle) return true;
  return ccw_delta(start_angle, a) <= span();
}

ArcProjection project_onto_arc(Point2 p, const Arc& arc) {
  const Point2 v = p - arc.center;
  const double len = norm(v);
  if (len == 0.0) {
    return {arc.start_point(), arc.radius, 0.0};
  }
  const double theta = normalize_angle(std::atan2(v.y, v.x));
  if (arc.contains_angle(theta)) {
    const double t = arc.full_circle ? theta * arc.radius
                                     : ccw_delta(arc.start_angle, theta) * arc.radius;
    return {arc.center + (arc.radius / len) * v, std::abs(len - arc.radius), t};
  }
  const Point2 s = arc.start_point();
  const Point2 e = arc.end_point();
  const double ds = distance(p, s);
  const double de = distance(p, e);
  if (ds <= de) return {s, ds, 0.0};
  return {e, de, arc.length()};
}

double point_to_arc_distance(Point2 p, const Arc& arc) { return project_onto_arc(p, arc).distance; }

// ---------------------------------------------------------------------------
// Angular interval sets

AngularIntervalSet AngularIntervalSet::full() {
  AngularIntervalSet s;
  s.intervals_.push_back({0.0, kTwoPi});
  return s;
}

void AngularIntervalSet::add(double start, double span) {
  if (!(span > 0.0)) return;
  if (span >= kTwoPi) {
    intervals_.assign(1, {0.0, kTwoPi});
    return;
  }
  const double s = normalize_angle(start);
  const double e = s + span;
  if (e <= kTwoPi) {
    intervals_.push_back({s, e});
  } else {
    intervals_.push_back({s, kTwoPi});
    intervals_.push_back({0.0, e - kTwoPi});
  }
  normalize();
}

void AngularIntervalSet::add_set(const AngularIntervalSet& other) {
  intervals_.insert(intervals_.end(), other.intervals_.begin(), other.intervals_.end());
  normalize();
}

void AngularIntervalSet::normalize() {
  if (intervals_.empty()) return;
  std::sort(intervals_.begin(), intervals_.end(),
            [](const AngularInterval& a, const AngularInterval& b) { return a.lo < b.lo; });
  std::vector<AngularInterval> merged;
  merged.reserve(intervals_.size());
  for (const AngularInterval& iv : intervals_) {
    if (!merged.empty() && iv.lo <= merged.back().hi + kAngleMergeTolerance) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  if (merged.front().lo <= kAngleMergeTolerance) merged.front().lo = 0.0;
  if (merged.back().hi >= kTwoPi - kAngleMergeTolerance) merged.back().hi = kTwoPi;
  intervals_ = std::move(merged);
}

bool AngularIntervalSet::is_full() const {
  return intervals_.size() == 1 && intervals_.front().lo == 0.0 && intervals_.front().hi == kTwoPi;
}

double AngularIntervalSet::measure() const {
  double m = 0.0;
  for (const AngularInterval& iv : intervals_) m += iv.measure();
  return m;
}

bool AngularIntervalSet::contains(double angle) const {
  const double a = normalize_angle(angle);
  for (const AngularInterval& iv : intervals_) {
    if (a >= iv.lo && a <= iv.hi) return true;
  }
  return false;
}

AngularIntervalSet AngularIntervalSet::complement() const {
  AngularIntervalSet out;
  double cursor = 0.0;
  for (const AngularInterval& iv : intervals_) {
    if (iv.lo - cursor > kAngleMergeTolerance) out.intervals_.push_back({cursor, iv.lo});
    cursor = std::max(cursor, iv.hi);
  }
  if (kTwoPi - cursor > kAngleMergeTolerance) out.intervals_.push_back({cursor, kTwoPi});
  return out;
}

std::vector<AngularIntervalSet::Span> AngularIntervalSet::spans() const {
  std::vector<Span> out;
  if (intervals_.empty()) return out;
  if (is_full()) {
    out.push_back({0.0, kTwoPi});
    return out;
  }
  const bool wraps = intervals_.size() > 1 && intervals_.front().lo == 0.0 &&
                     intervals_.back().hi == kTwoPi;
  const std::size_t first = wraps ? 1 : 0;
  const std::size_t last = wraps ? intervals_.size() - 1 : intervals_.size();
  for (std::size_t i = first; i < last; ++i) {
    out.push_back({intervals_[i].lo, intervals_[i].measure()});
  }
  if (wraps) {
    out.push_back({intervals_.back().lo, intervals_.back().measure() + intervals_.front().measure()});
  }
  return out;
}

AngularIntervalSet subtract_angular_cover(const AngularIntervalSet& cover) {
  return cover.complement();
}

// ---------------------------------------------------------------------------
// Polylines and segments

std::size_t Polyline::segment_count() const {
  if (vertices.size() < 2) return 0;
  return closed ? vertices.size() : vertices.size() - 1;
}

double Polyline::length() const {
  double len = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < segment_count(); ++i) {
    len += distance(vertices[i], vertices[(i + 1) % n]);
  }
  return len;
}

std::vector<Point2> Polyline::sample(double spacing) const {
  std::vector<Point2> out;
  const std::size_t n = vertices.size();
  if (n == 0) return out;
  if (!(spacing > 0.0)) throw Error("polyline sample: spacing must be positive");
  for (std::size_t i = 0; i < segment_count(); ++i) {
    const Point2 a = vertices[i];
    const Point2 b = vertices[(i + 1) % n];
    const double len = distance(a, b);
    const auto steps = static_cast<std::size_t>(std::ceil(len / spacing));
    for (std::size_t k = 0; k < std::max<std::size_t>(steps, 1); ++k) {
      const double t = steps == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(steps);
      out.push_back(a + t * (b - a));
    }
  }
  if (!closed || n == 1) out.push_back(vertices.back());
  return out;
}

void Polyline::validate() const {
  if (vertices.size() < 2) throw Error("polyline needs at least 2 vertices");
  for (Point2 p : vertices) {
    if (!is_finite(p)) throw Error("polyline has non-finite vertex");
  }
  if (closed && vertices.front() == vertices.back()) {
    throw Error("closed polyline must not repeat its first vertex");
  }
}

Point2 closest_point_on_segment(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double l2 = norm2(ab);
  if (l2 == 0.0) return a;
  const double t = std::clamp(dot(p - a, ab) / l2, 0.0, 1.0);
  return a + t * ab;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  return distance(p, closest_point_on_segment(p, a, b));
}

namespace {

int orientation(Point2 a, Point2 b, Point2 c) {
  const double v = cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool is_simple(const Polyline& poly) {
  const std::size_t n = poly.vertices.size();
  const std::size_t m = poly.segment_count();
  if (m < 2) return true;
  const auto& v = poly.vertices;
  auto seg_a = [&](std::size_t i) { return v[i]; };
  auto seg_b = [&](std::size_t i) { return v[(i + 1) % n]; };
  auto adjacent = [&](std::size_t i, std::size_t j) {
    if (j == i + 1) return true;
    return poly.closed && i == 0 && j == m - 1;
  };

  // Adjacent segments may only share their joint; a fold-back overlaps.
  const std::size_t joints = poly.closed ? m : m - 1;
  for (std::size_t i = 0; i < joints; ++i) {
    const std::size_t j = (i + 1) % m;
    const Point2 a = seg_a(i), b = seg_b(i), c = seg_b(j);
    if (cross(b - a, c - b) == 0.0 && dot(b - a, c - b) < 0.0) return false;
  }

  double max_len = 0.0;
  for (std::size_t i = 0; i < m; ++i) max_len = std::max(max_len, distance(seg_a(i), seg_b(i)));
  if (max_len == 0.0) return false;

  std::vector<Point2> mids(m);
  for (std::size_t i = 0; i < m; ++i) mids[i] = midpoint(seg_a(i), seg_b(i));
  const SpatialGrid grid(mids, max_len);
  for (std::size_t i = 0; i < m; ++i) {
    bool hit = false;
    grid.for_each_within(mids[i], max_len, [&](std::size_t j) {
      if (hit || j <= i || adjacent(i, j)) return;
      if (segments_intersect(seg_a(i), seg_b(i), seg_a(j), seg_b(j))) hit = true;
    });
    if (hit) return false;
  }
  return true;
}

int winding_number(const Polyline& curve, Point2 p) {
  const std::size_t n = curve.vertices.size();
  if (n < 3) throw Error("winding number needs a closed polyline with >= 3 vertices");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = curve.vertices[i];
    const Point2 b = curve.vertices[(i + 1) % n];
    if (point_segment_distance(p, a, b) <= 1e-12) throw Error("degenerate query");
    const Point2 u = a - p;
    const Point2 w = b - p;
    total += std::atan2(cross(u, w), dot(u, w));
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

// ---------------------------------------------------------------------------
// Hausdorff

double directed_hausdorff(std::span<const Point2> a, std::span<const Point2> b) {
  if (a.empty() || b.empty()) throw Error("empty set");
  const BoundingBox box = bounding_box(b);
  const double extent = std::max({box.width(), box.height(), 1e-12});
  const double cell = extent / std::max(1.0, std::sqrt(static_cast<double>(b.size())));
  const SpatialGrid grid(b, cell);
  double worst = 0.0;
  for (Point2 p : a) worst = std::max(worst, grid.nearest(p).distance);
  return worst;
}

double hausdorff_distance(std::span<const Point2> a, std::span<const Point2> b) {
  if (a.empty() || b.empty()) throw Error("empty set");
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double circumradius(Point2 a, Point2 b, Point2 c) {
  const double area2 = std::abs(cross(b - a, c - a));
  if (area2 == 0.0) return std::numeric_limits<double>::infinity();
  return distance(a, b) * distance(b, c) * distance(c, a) / (2.0 * area2);
}

}  // namespace filament
