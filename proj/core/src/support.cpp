#include "filament/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "filament/error.hpp"

namespace filament {

double nn_max_epsilon(std::span<const Point2> points) {
  if (points.size() < 2) throw Error("epsilon selection needs at least 2 points");
  const BoundingBox box = bounding_box(points);
  const double extent = std::max({box.width(), box.height(), 1e-12});
  const SpatialGrid grid(points, extent / std::sqrt(static_cast<double>(points.size())));
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    worst = std::max(worst, grid.nearest_excluding(points[i], i).distance);
  }
  return worst;
}

double rate_epsilon(std::size_t n, double constant, double alpha) {
  if (n < 2) throw Error("epsilon selection needs at least 2 points");
  const double nn = static_cast<double>(n);
  return constant * std::pow(std::log(nn) / nn, 1.0 / (2.0 + alpha));
}

double select_epsilon(std::span<const Point2> points, const EpsilonRule& rule) {
  if (rule.method == EpsilonMethod::nn_max) return nn_max_epsilon(points);
  return rate_epsilon(points.size(), rule.constant, rule.alpha);
}

// ---------------------------------------------------------------------------
// BallUnion

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

BallUnion::BallUnion(std::vector<Point2> centers, double epsilon)
    : centers_(std::move(centers)), epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw Error("epsilon must be positive");
  if (centers_.empty()) throw Error("ball union needs at least one center");
  grid_ = std::make_shared<SpatialGrid>(centers_, epsilon_);

  DisjointSets sets(centers_.size());
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    grid_->for_each_within(centers_[i], 2.0 * epsilon_, [&](std::size_t j) {
      if (j > i && distance(centers_[i], centers_[j]) < 2.0 * epsilon_) sets.unite(i, j);
    });
  }
  // Components numbered by their smallest ball index.
  component_.assign(centers_.size(), 0);
  std::vector<std::size_t> label(centers_.size(), SpatialGrid::npos);
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    const std::size_t r = sets.find(i);
    if (label[r] == SpatialGrid::npos) label[r] = component_count_++;
    component_[i] = label[r];
  }
}

std::vector<std::vector<std::size_t>> BallUnion::components() const {
  std::vector<std::vector<std::size_t>> out(component_count_);
  for (std::size_t i = 0; i < centers_.size(); ++i) out[component_[i]].push_back(i);
  return out;
}

bool BallUnion::contains(Point2 y) const {
  bool found = false;
  grid_->for_each_within(y, epsilon_, [&](std::size_t) { found = true; });
  return found;
}

double BallUnion::nearest_center_distance(Point2 y) const { return grid_->nearest(y).distance; }

BoundingBox BallUnion::bounds() const {
  BoundingBox box = bounding_box(centers_);
  box.inflate(epsilon_);
  return box;
}

// ---------------------------------------------------------------------------
// Boundary arrangement

BoundaryArrangement::BoundaryArrangement(std::vector<BoundaryArc> arcs, std::vector<BoundaryLoop> loops)
    : arcs_(std::move(arcs)), loops_(std::move(loops)) {}

double BoundaryArrangement::total_length() const {
  double len = 0.0;
  for (const BoundaryLoop& l : loops_) len += l.length;
  return len;
}

Point2 BoundaryArrangement::loop_point(std::size_t loop, double s) const {
  const BoundaryLoop& l = loops_.at(loop);
  s -= std::floor(s / l.length) * l.length;
  // Binary search on arc offsets.
  std::size_t lo = 0, hi = l.arcs.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (arcs_[l.arcs[mid]].loop_offset <= s) lo = mid; else hi = mid;
  }
  const BoundaryArc& a = arcs_[l.arcs[lo]];
  return a.arc.point_at_length(std::min(s - a.loop_offset, a.arc.length()));
}

double BoundaryArrangement::loop_turning(std::size_t loop) const {
  const BoundaryLoop& l = loops_.at(loop);
  double total = 0.0;
  for (std::size_t k = 0; k < l.arcs.size(); ++k) {
    const Arc& a = arcs_[l.arcs[k]].arc;
    const Arc& b = arcs_[l.arcs[(k + 1) % l.arcs.size()]].arc;
    total += a.span();
    if (a.full_circle) continue;
    const Point2 t_out = a.tangent_at_angle(a.start_angle + a.span());
    const Point2 t_in = b.tangent_at_angle(b.start_angle);
    total += std::atan2(cross(t_out, t_in), dot(t_out, t_in));
  }
  return total;
}

Polyline BoundaryArrangement::loop_polyline(std::size_t loop, double spacing) const {
  Polyline poly;
  poly.closed = true;
  for (std::size_t idx : loops_.at(loop).arcs) {
    const Arc& a = arcs_[idx].arc;
    const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(a.length() / spacing)));
    for (std::size_t k = 0; k < n; ++k) {
      poly.vertices.push_back(a.point_at_length(a.length() * static_cast<double>(k) / static_cast<double>(n)));
    }
  }
  return poly;
}

std::vector<Point2> BoundaryArrangement::sample(double spacing) const {
  if (!(spacing > 0.0)) throw Error("arrangement sample: spacing must be positive");
  std::vector<Point2> out;
  for (const BoundaryArc& ba : arcs_) {
    const Arc& a = ba.arc;
    const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(a.length() / spacing)));
    for (std::size_t k = 0; k <= n; ++k) {
      out.push_back(a.point_at_length(a.length() * static_cast<double>(k) / static_cast<double>(n)));
    }
  }
  return out;
}

Point2 BoundaryArrangement::hole_probe(std::size_t loop) const {
  const BoundaryLoop& l = loops_.at(loop);
  std::size_t best = l.arcs.front();
  for (std::size_t idx : l.arcs) {
    if (arcs_[idx].arc.length() > arcs_[best].arc.length()) best = idx;
  }
  const Arc& a = arcs_[best].arc;
  const double mid = a.start_angle + 0.5 * a.span();
  return a.center + (a.radius * (1.0 + 1e-6)) * unit_vector(mid);
}

namespace {

double arc_area_term(const Arc& a) {
  const double s = a.start_angle;
  const double e = s + a.span();
  const double r = a.radius;
  return 0.5 * (r * r * a.span() + r * a.center.x * (std::sin(e) - std::sin(s)) -
                r * a.center.y * (std::cos(e) - std::cos(s)));
}

constexpr double kStitchTolerance = 1e-9;

}  // namespace

BoundaryArrangement boundary(const BallUnion& balls) {
  const auto& c = balls.centers();
  const double eps = balls.epsilon();
  const std::size_t n = c.size();

  // Exact duplicates contribute nothing beyond their first copy.
  std::vector<char> shadowed(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    balls.grid().for_each_within(c[i], 0.0, [&](std::size_t j) {
      if (j < i && c[j] == c[i]) shadowed[i] = 1;
    });
  }

  std::vector<BoundaryArc> arcs;
  std::vector<std::pair<double, double>> cover;
  for (std::size_t i = 0; i < n; ++i) {
    if (shadowed[i]) continue;
    cover.clear();
    balls.grid().for_each_within(c[i], 2.0 * eps, [&](std::size_t j) {
      if (j == i || shadowed[j]) return;
      const Point2 d = c[j] - c[i];
      const double len = norm(d);
      if (!(len < 2.0 * eps) || len == 0.0) return;
      const double half = std::acos(len / (2.0 * eps));
      cover.emplace_back(std::atan2(d.y, d.x) - half, 2.0 * half);
    });
    AngularIntervalSet covered;
    for (const auto& [start, span] : cover) covered.add(start, span);
    const AngularIntervalSet open = subtract_angular_cover(covered);
    for (const auto& sp : open.spans()) {
      arcs.push_back({Arc::from_span(c[i], eps, sp.start, sp.extent), i, 0, 0.0});
    }
  }

  // Stitch: each arc's end point is the start point of exactly one other arc.
  std::vector<std::size_t> next(arcs.size(), SpatialGrid::npos);
  std::vector<std::size_t> prev(arcs.size(), SpatialGrid::npos);
  std::vector<Point2> starts;
  std::vector<std::size_t> start_arc;
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (arcs[a].arc.full_circle) {
      next[a] = prev[a] = a;
      continue;
    }
    starts.push_back(arcs[a].arc.start_point());
    start_arc.push_back(a);
  }
  if (!starts.empty()) {
    const SpatialGrid start_grid(starts, eps);
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      if (arcs[a].arc.full_circle) continue;
      const Point2 e = arcs[a].arc.end_point();
      std::size_t best = SpatialGrid::npos;
      double best_d = std::numeric_limits<double>::infinity();
      start_grid.for_each_within(e, kStitchTolerance, [&](std::size_t k) {
        const std::size_t cand = start_arc[k];
        if (cand == a) return;
        const double d = distance(starts[k], e);
        if (d < best_d) {
          best_d = d;
          best = cand;
        }
      });
      if (best == SpatialGrid::npos || prev[best] != SpatialGrid::npos) {
        throw Error("degenerate arrangement");
      }
      next[a] = best;
      prev[best] = a;
    }
  }

  std::vector<BoundaryLoop> loops;
  std::vector<char> seen(arcs.size(), 0);
  for (std::size_t a0 = 0; a0 < arcs.size(); ++a0) {
    if (seen[a0]) continue;
    BoundaryLoop loop;
    std::size_t a = a0;
    do {
      if (seen[a]) throw Error("degenerate arrangement");
      seen[a] = 1;
      arcs[a].loop = loops.size();
      arcs[a].loop_offset = loop.length;
      loop.arcs.push_back(a);
      loop.length += arcs[a].arc.length();
      loop.signed_area += arc_area_term(arcs[a].arc);
      a = next[a];
    } while (a != a0);
    loop.component = balls.component_of(arcs[a0].ball);
    loops.push_back(std::move(loop));
  }
  return BoundaryArrangement(std::move(arcs), std::move(loops));
}

// ---------------------------------------------------------------------------
// Distance queries

ArcIndex::ArcIndex(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {
  if (arcs_.empty()) return;
  std::vector<Point2> centers;
  centers.reserve(arcs_.size());
  for (const Arc& a : arcs_) {
    centers.push_back(a.center);
    max_radius_ = std::max(max_radius_, a.radius);
  }
  grid_ = SpatialGrid(centers, std::max(max_radius_, 1e-12));
}

ArcIndex::Hit ArcIndex::nearest(Point2 y) const {
  Hit hit;
  if (arcs_.empty()) return hit;
  const auto h = grid_.nearest_by(y, max_radius_, [&](std::size_t i) {
    return point_to_arc_distance(y, arcs_[i]);
  });
  hit.arc = h.index;
  hit.distance = h.distance;
  hit.point = project_onto_arc(y, arcs_[h.index]).point;
  return hit;
}

SupportEstimate::SupportEstimate(BallUnion balls, BoundaryArrangement arrangement)
    : balls_(std::move(balls)), arrangement_(std::move(arrangement)) {
  std::vector<Arc> arcs;
  arcs.reserve(arrangement_.arcs().size());
  for (const BoundaryArc& a : arrangement_.arcs()) arcs.push_back(a.arc);
  index_ = ArcIndex(std::move(arcs));
}

std::shared_ptr<const SupportEstimate> SupportEstimate::build(std::vector<Point2> points, double epsilon) {
  BallUnion balls(points, epsilon);
  try {
    BoundaryArrangement arr = boundary(balls);
    return std::shared_ptr<const SupportEstimate>(new SupportEstimate(std::move(balls), std::move(arr)));
  } catch (const Error&) {
    BallUnion retry(std::move(points), epsilon * (1.0 + 1e-9));
    BoundaryArrangement arr = boundary(retry);
    return std::shared_ptr<const SupportEstimate>(new SupportEstimate(std::move(retry), std::move(arr)));
  }
}

double SupportEstimate::distance_to_boundary(Point2 y) const {
  const double dc = balls_.nearest_center_distance(y);
  if (dc > balls_.epsilon()) return dc - balls_.epsilon();
  return index_.nearest(y).distance;
}

double distance_to_boundary(const SupportEstimate& support, Point2 y) {
  return support.distance_to_boundary(y);
}

BoundaryError boundary_error(const SupportModel& truth, const SupportEstimate& estimate, double spacing) {
  BoundaryError err;
  for (Point2 p : truth.boundary_samples(spacing)) {
    err.truth_to_estimate = std::max(err.truth_to_estimate, estimate.distance_to_boundary(p));
  }
  for (Point2 q : estimate.arrangement().sample(spacing)) {
    err.estimate_to_truth = std::max(err.estimate_to_truth, truth.edt(q));
  }
  err.hausdorff = std::max(err.truth_to_estimate, err.estimate_to_truth);
  return err;
}

}  // namespace filament
