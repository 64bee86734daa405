#include "filament/medial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "filament/error.hpp"
#include "filament/parallel.hpp"

namespace filament {

BoundaryChain::BoundaryChain(std::vector<Arc> arcs, bool closed) : arcs_(std::move(arcs)), closed_(closed) {
  offsets_.reserve(arcs_.size());
  for (const Arc& a : arcs_) {
    offsets_.push_back(length_);
    length_ += a.length();
  }
}

Point2 BoundaryChain::point_at(double s) const {
  if (arcs_.empty()) throw Error("empty boundary chain");
  s = std::clamp(s, 0.0, length_);
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), s);
  const std::size_t k = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return arcs_[k].point_at_length(std::min(s - offsets_[k], arcs_[k].length()));
}

std::vector<Point2> BoundaryChain::sample(double spacing) const {
  if (!(spacing > 0.0)) throw Error("chain sample: spacing must be positive");
  if (arcs_.empty()) return {};
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length_ / spacing)));
  const std::size_t count = closed_ ? n : n + 1;
  std::vector<Point2> out;
  out.reserve(count);
  std::size_t k = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double s = length_ * static_cast<double>(i) / static_cast<double>(n);
    while (k + 1 < arcs_.size() && offsets_[k + 1] <= s) ++k;
    out.push_back(arcs_[k].point_at_length(std::min(s - offsets_[k], arcs_[k].length())));
  }
  return out;
}

namespace {

BoundaryChain loop_chain(const BoundaryArrangement& arr, std::size_t loop) {
  std::vector<Arc> arcs;
  for (std::size_t idx : arr.loops()[loop].arcs) arcs.push_back(arr.arcs()[idx].arc);
  return BoundaryChain(std::move(arcs), true);
}

/// Chain covering loop parameters [s0, s1] (s1 may exceed the loop length by
/// up to one lap).
BoundaryChain loop_piece(const BoundaryArrangement& arr, std::size_t loop, double s0, double s1) {
  const BoundaryLoop& l = arr.loops()[loop];
  std::vector<Arc> arcs;
  for (int lap = 0; lap < 2; ++lap) {
    const double base = lap * l.length;
    for (std::size_t idx : l.arcs) {
      const BoundaryArc& ba = arr.arcs()[idx];
      const double a0 = base + ba.loop_offset;
      const double a1 = a0 + ba.arc.length();
      const double lo = std::max(a0, s0);
      const double hi = std::min(a1, s1);
      if (hi - lo <= 1e-14) continue;
      const double r = ba.arc.radius;
      arcs.push_back(Arc::from_span(ba.arc.center, r, ba.arc.start_angle + (lo - a0) / r, (hi - lo) / r));
    }
  }
  return BoundaryChain(std::move(arcs), false);
}

struct Interval {
  double lo;
  double hi;
};

/// Loop-parameter intervals where the loop lies inside the closed disk B(x, r).
std::vector<Interval> loop_inside_disk(const BoundaryArrangement& arr, std::size_t loop, Point2 x, double r) {
  std::vector<Interval> out;
  for (std::size_t idx : arr.loops()[loop].arcs) {
    const BoundaryArc& ba = arr.arcs()[idx];
    const Arc& a = ba.arc;
    const double d = distance(a.center, x);
    AngularIntervalSet inside;
    if (d + a.radius <= r) {
      inside = AngularIntervalSet::full();
    } else if (d >= r + a.radius || d + r <= a.radius) {
      continue;
    } else {
      const double cosh = (d * d + a.radius * a.radius - r * r) / (2.0 * d * a.radius);
      const double h = std::acos(std::clamp(cosh, -1.0, 1.0));
      const double phi = std::atan2(x.y - a.center.y, x.x - a.center.x);
      inside.add(phi - h, 2.0 * h);
    }
    // Intersect with the arc's span, expressed as offsets from its start.
    for (const AngularInterval& iv : inside.intervals()) {
      for (int shift = -1; shift <= 1; ++shift) {
        const double lo = iv.lo + shift * kTwoPi - a.start_angle;
        const double hi = iv.hi + shift * kTwoPi - a.start_angle;
        const double clo = std::max(lo, 0.0);
        const double chi = std::min(hi, a.span());
        if (chi > clo) out.push_back({ba.loop_offset + clo * a.radius, ba.loop_offset + chi * a.radius});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Interval& p, const Interval& q) { return p.lo < q.lo; });
  return out;
}

/// Smallest circular interval [lo, hi] (hi may exceed L) containing every
/// piece: the loop minus its largest gap.
Interval circular_completion(const std::vector<Interval>& pieces, double length) {
  std::vector<Interval> merged;
  for (const Interval& p : pieces) {
    if (!merged.empty() && p.lo <= merged.back().hi + 1e-12) {
      merged.back().hi = std::max(merged.back().hi, p.hi);
    } else {
      merged.push_back(p);
    }
  }
  double best_gap = -1.0;
  std::size_t best = 0;
  for (std::size_t k = 0; k < merged.size(); ++k) {
    const double next_lo = k + 1 < merged.size() ? merged[k + 1].lo : merged.front().lo + length;
    const double gap = next_lo - merged[k].hi;
    if (gap > best_gap) {
      best_gap = gap;
      best = k;
    }
  }
  if (best_gap <= 0.0) return {0.0, length};
  // Completion starts after the largest gap and ends at its beginning.
  const std::size_t first = (best + 1) % merged.size();
  double lo = merged[first].lo;
  double hi = merged[best].hi;
  if (hi < lo) hi += length;
  if (lo >= length) {
    lo -= length;
    hi -= length;
  }
  return {lo, hi};
}

// Loops enclosing at least one ball's area; smaller ones are pinholes
// between overlapping balls.
std::vector<std::size_t> major_loops(const BoundaryArrangement& arr, double epsilon) {
  const double min_area = std::numbers::pi * epsilon * epsilon;
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < arr.loops().size(); ++l) {
    if (std::abs(arr.loops()[l].signed_area) >= min_area) out.push_back(l);
  }
  return out;
}

}  // namespace

SplitBoundary split_closed(const BoundaryArrangement& arrangement, double epsilon) {
  const auto loops = major_loops(arrangement, epsilon);
  const auto& all = arrangement.loops();
  if (loops.size() != 2 || all[loops[0]].is_hole() == all[loops[1]].is_hole()) {
    throw Error("not a closed-tube topology");
  }
  const bool first_outer = !all[loops[0]].is_hole();
  SplitBoundary split;
  split.side0 = loop_chain(arrangement, first_outer ? loops[0] : loops[1]);
  split.side1 = loop_chain(arrangement, first_outer ? loops[1] : loops[0]);
  split.provenance = SplitProvenance::closed_native;
  return split;
}

SplitBoundary split_open(const BoundaryArrangement& arrangement, Point2 x0, Point2 x1,
                         const EndpointSplitConfig& config) {
  if (!(config.c >= 1.0)) throw Error("cap slack constant c must be >= 1");
  const auto loops = major_loops(arrangement, config.epsilon);
  if (loops.size() != 1) throw Error("cap separation failed");
  const std::size_t loop = loops[0];
  const double radius = config.sigma_hat + config.c * config.epsilon;
  if (!(distance(x0, x1) > 2.0 * radius)) throw Error("cap separation failed");

  const double length = arrangement.loops()[loop].length;
  const auto in0 = loop_inside_disk(arrangement, loop, x0, radius);
  const auto in1 = loop_inside_disk(arrangement, loop, x1, radius);
  if (in0.empty() || in1.empty()) throw Error("cap separation failed");
  const Interval e0 = circular_completion(in0, length);
  const Interval e1 = circular_completion(in1, length);

  // The completions must be disjoint on the circle of length `length`.
  auto overlaps = [length](Interval a, Interval b) {
    for (int shift = -1; shift <= 1; ++shift) {
      const double lo = b.lo + shift * length;
      const double hi = b.hi + shift * length;
      if (lo < a.hi && a.lo < hi) return true;
    }
    return false;
  };
  if (e0.hi - e0.lo >= length || e1.hi - e1.lo >= length || overlaps(e0, e1)) {
    throw Error("cap separation failed");
  }

  // side0: end of [E0] forward to start of [E1]; side1: end of [E1] to start of [E0].
  auto forward = [length](double from, double to) {
    double t = to;
    while (t <= from) t += length;
    while (t - from > length) t -= length;
    return t;
  };
  const double s0a = std::fmod(e0.hi, length);
  const double s0b = forward(s0a, e1.lo);
  const double s1a = std::fmod(e1.hi, length);
  const double s1b = forward(s1a, e0.lo);

  SplitBoundary split;
  split.provenance = SplitProvenance::open_split;
  split.side0 = loop_piece(arrangement, loop, s0a, s0b);
  split.side1 = loop_piece(arrangement, loop, s1a, s1b);
  split.cut_sets.push_back(loop_piece(arrangement, loop, e0.lo, e0.hi));
  split.cut_sets.push_back(loop_piece(arrangement, loop, e1.lo, e1.hi));
  if (split.side0.empty() || split.side1.empty()) throw Error("cap separation failed");
  return split;
}

CapConstants cap_constants(double c, double epsilon, double sigma, double thickness, double arclength) {
  const double ratio = thickness >= kInfiniteThickness ? 0.0 : sigma / thickness;
  CapConstants k;
  k.a = std::sqrt((2.0 * sigma * c + c * c * epsilon) / (arclength * arclength * (1.0 - ratio)));
  k.b = k.a * arclength * (1.0 + ratio);
  return k;
}

std::vector<Point2> MedialEstimate::midpoints() const {
  std::vector<Point2> out;
  out.reserve(samples.size());
  for (const MedialSample& s : samples) out.push_back(s.mid);
  return out;
}

MedialEstimate medial_fit(const SplitBoundary& split, double spacing) {
  if (!(spacing > 0.0)) throw Error("medial spacing must be positive");
  if (split.side0.empty() || split.side1.empty()) throw Error("empty boundary side");
  const ArcIndex index(split.side1.arcs());
  const std::vector<Point2> ys = split.side0.sample(spacing);

  MedialEstimate est;
  est.closed = split.side0.closed();
  est.spacing = spacing;
  est.samples.resize(ys.size());
  parallel_for(ys.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const Point2 yh = index.nearest(ys[k]).point;
      est.samples[k] = {ys[k], yh, midpoint(ys[k], yh)};
    }
  });
  const double jump = 3.0 * spacing;
  for (std::size_t k = 1; k < est.samples.size(); ++k) {
    if (distance(est.samples[k].mid, est.samples[k - 1].mid) > jump) est.breakpoints.push_back(k);
  }
  if (est.closed && est.samples.size() > 1 &&
      distance(est.samples.front().mid, est.samples.back().mid) > jump) {
    est.breakpoints.insert(est.breakpoints.begin(), 0);
  }
  return est;
}

Polyline complete(const MedialEstimate& estimate) {
  Polyline poly;
  poly.closed = estimate.closed;
  for (const MedialSample& s : estimate.samples) {
    if (poly.vertices.empty() || !(poly.vertices.back() == s.mid)) poly.vertices.push_back(s.mid);
  }
  if (poly.closed && poly.vertices.size() > 1 && poly.vertices.front() == poly.vertices.back()) {
    poly.vertices.pop_back();
  }
  if (poly.vertices.size() < (poly.closed ? 3u : 2u)) throw Error("completion not simple");
  if (!is_simple(poly)) throw Error("completion not simple");
  return poly;
}

}  // namespace filament
