#include "filament/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "filament/error.hpp"

namespace filament {

std::string to_string(Topology t) { return t == Topology::closed ? "closed" : "open"; }

double CurveSpec::param(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

// ---------------------------------------------------------------------------
// FilamentCurve

struct FilamentCurve::Impl {
  Parametric p;
  Parametric dp;
  bool closed = false;
  double table_length = 0.0;
  std::vector<double> t_of_s;  // uniform in arclength, size K + 1

  double param_at(double u) const {
    if (closed) {
      u -= std::floor(u);
    } else {
      u = std::clamp(u, 0.0, 1.0);
    }
    const double k = static_cast<double>(t_of_s.size() - 1);
    const double x = u * k;
    const auto i = std::min(static_cast<std::size_t>(x), t_of_s.size() - 2);
    const double f = x - static_cast<double>(i);
    return t_of_s[i] + f * (t_of_s[i + 1] - t_of_s[i]);
  }

  Point2 eval(double u) const { return p(param_at(u)); }

  // Unnormalized direction of travel at u.
  Point2 direction(double u) const {
    if (dp) return dp(param_at(u));
    constexpr double h = 1e-6;
    double a = u - h, b = u + h;
    if (!closed) {
      a = std::max(0.0, a);
      b = std::min(1.0, b);
    }
    return eval(b) - eval(a);
  }
};

namespace {

constexpr int kTableChords = 1 << 16;

}  // namespace

FilamentCurve FilamentCurve::from_parametric(Parametric p, Topology topology, int resolution,
                                             Parametric derivative) {
  if (resolution < 16) throw Error("curve resolution must be >= 16");
  auto impl = std::make_shared<Impl>();
  impl->p = std::move(p);
  impl->dp = std::move(derivative);
  impl->closed = topology == Topology::closed;
  if (impl->closed && filament::distance(impl->p(0.0), impl->p(1.0)) > 1e-9) {
    throw Error("closed curve must satisfy p(0) == p(1)");
  }

  // Fine chord table in the native parameter.
  const int n = kTableChords;
  std::vector<Point2> pts(n + 1);
  for (int j = 0; j <= n; ++j) pts[j] = impl->p(static_cast<double>(j) / n);
  std::vector<double> cum(n + 1, 0.0);
  double half = 0.0;
  for (int j = 0; j < n; ++j) cum[j + 1] = cum[j] + filament::distance(pts[j], pts[j + 1]);
  for (int j = 0; j < n; j += 2) half += filament::distance(pts[j], pts[j + 2]);
  const double total = cum[n];
  if (!(total > 0.0)) throw Error("curve has zero length");
  impl->table_length = total;

  impl->t_of_s.resize(n + 1);
  int j = 0;
  for (int i = 0; i <= n; ++i) {
    const double s = total * static_cast<double>(i) / n;
    while (j < n - 1 && cum[j + 1] < s) ++j;
    const double seg = cum[j + 1] - cum[j];
    const double f = seg > 0.0 ? std::clamp((s - cum[j]) / seg, 0.0, 1.0) : 0.0;
    impl->t_of_s[i] = (static_cast<double>(j) + f) / n;
  }
  impl->t_of_s.front() = 0.0;
  impl->t_of_s.back() = 1.0;

  FilamentCurve curve;
  curve.topology_ = topology;
  // Chord sums converge as O(h^2); one Richardson step removes the leading term.
  curve.arclength_ = total + (total - half) / 3.0;

  // Position at arclength s, extrapolated past the end of open curves.
  const Impl& im = *impl;
  auto pos = [&](double s) {
    if (im.closed || s <= total) return im.eval(s / total);
    Point2 t = im.direction(1.0);
    t = t / norm(t);
    return im.eval(1.0) + (s - total) * t;
  };
  // Arclength s' > s whose chord from pos(s) equals c.
  auto step = [&](double s, double c) {
    const Point2 a = pos(s);
    double lo = s;
    double hi = s + 1.5 * c;
    for (int k = 0; k < 20 && filament::distance(pos(hi), a) < c; ++k) hi = s + (hi - s) * 1.5;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (filament::distance(pos(mid), a) < c) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  const int segs = impl->closed ? resolution : resolution - 1;
  auto march = [&](double c, std::vector<double>* out) {
    double s = 0.0;
    if (out) out->assign(1, 0.0);
    for (int k = 0; k < segs; ++k) {
      s = step(s, c);
      if (out) out->push_back(s);
    }
    return s - total;
  };

  // Secant iteration on the common chord length.
  double c0 = total / segs;
  double c1 = c0 * (1.0 - 1e-3);
  double f0 = march(c0, nullptr);
  double f1 = march(c1, nullptr);
  for (int it = 0; it < 60 && std::abs(f1) > 1e-13 * total; ++it) {
    if (f1 == f0) break;
    const double c2 = c1 - f1 * (c1 - c0) / (f1 - f0);
    c0 = c1;
    f0 = f1;
    c1 = c2;
    f1 = march(c1, nullptr);
  }
  std::vector<double> arc_pos;
  march(c1, &arc_pos);
  curve.chord_ = c1;

  const std::size_t m = static_cast<std::size_t>(resolution);
  curve.vertices_.resize(m);
  curve.params_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double u = impl->closed ? arc_pos[k] / total : std::min(arc_pos[k] / total, 1.0);
    curve.params_[k] = u;
    curve.vertices_[k] = impl->eval(u);
  }
  if (!impl->closed) {
    curve.params_.back() = 1.0;
    curve.vertices_.back() = impl->eval(1.0);
  }
  curve.impl_ = impl;
  curve.tangents_.resize(m);
  curve.normals_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    curve.tangents_[k] = curve.tangent(curve.params_[k]);
    curve.normals_[k] = perp(curve.tangents_[k]);
  }
  curve.vertex_grid_ = std::make_shared<SpatialGrid>(curve.vertices_, c1);
  return curve;
}

FilamentCurve FilamentCurve::from_polyline(std::vector<Point2> points, bool closed, int resolution) {
  Polyline poly{points, closed};
  poly.validate();
  if (!is_simple(poly)) throw Error("not simple");
  if (closed) points.push_back(points.front());
  std::vector<double> cum(points.size(), 0.0);
  for (std::size_t i = 1; i < points.size(); ++i) cum[i] = cum[i - 1] + filament::distance(points[i - 1], points[i]);
  const double total = cum.back();
  auto locate = [points, cum, total](double t) {
    const double s = std::clamp(t, 0.0, 1.0) * total;
    auto it = std::upper_bound(cum.begin(), cum.end(), s);
    std::size_t i = it == cum.begin() ? 0 : static_cast<std::size_t>(it - cum.begin()) - 1;
    i = std::min(i, points.size() - 2);
    const double seg = cum[i + 1] - cum[i];
    const double f = seg > 0.0 ? (s - cum[i]) / seg : 0.0;
    return std::pair<std::size_t, double>{i, f};
  };
  auto p = [points, locate](double t) {
    const auto [i, f] = locate(t);
    return points[i] + f * (points[i + 1] - points[i]);
  };
  auto dp = [points, locate](double t) {
    const auto [i, f] = locate(t);
    (void)f;
    return points[i + 1] - points[i];
  };
  return from_parametric(p, closed ? Topology::closed : Topology::open, resolution, dp);
}

Point2 FilamentCurve::eval(double u) const { return impl_->eval(u); }

Point2 FilamentCurve::tangent(double u) const {
  const Point2 d = impl_->direction(u);
  const double len = norm(d);
  if (len == 0.0) return {1.0, 0.0};
  return d / len;
}

FilamentCurve::Projection FilamentCurve::project(Point2 y) const {
  const std::size_t m = vertices_.size();
  const std::size_t segs = closed() ? m : m - 1;
  const auto near = vertex_grid_->nearest(y);

  // Best polyline segment among those touching vertices near the optimum.
  double best_seg_dist = std::numeric_limits<double>::infinity();
  std::size_t best_seg = 0;
  double best_t = 0.0;
  auto consider = [&](std::size_t i) {
    if (i >= segs) return;
    const Point2 a = vertices_[i];
    const Point2 b = vertices_[(i + 1) % m];
    const Point2 ab = b - a;
    const double l2 = norm2(ab);
    const double t = l2 > 0.0 ? std::clamp(dot(y - a, ab) / l2, 0.0, 1.0) : 0.0;
    const double d = filament::distance(y, a + t * ab);
    if (d < best_seg_dist) {
      best_seg_dist = d;
      best_seg = i;
      best_t = t;
    }
  };
  vertex_grid_->for_each_within(y, near.distance + 2.0 * chord_, [&](std::size_t k) {
    consider(k);
    if (k > 0) consider(k - 1);
    else if (closed()) consider(m - 1);
  });

  const double u_a = params_[best_seg];
  const double u_b = best_seg + 1 < m ? params_[best_seg + 1] : 1.0;
  const double du = u_b - u_a;
  double lo = u_a - du;
  double hi = u_b + du;
  if (!closed()) {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
  }

  const Impl& im = *impl_;
  // Stationarity of |f(u) - y|^2: g(u) = <f(u) - y, f'(u)> = 0.
  auto g = [&](double u) { return dot(im.eval(u) - y, im.direction(u)); };
  double u0 = u_a + best_t * du;
  double u1 = u0 + 1e-3 * du;
  double g0 = g(u0);
  double g1 = g(u1);
  bool ok = true;
  for (int it = 0; it < 8 && std::abs(u1 - u0) > 1e-15; ++it) {
    if (g1 == g0) break;
    const double u2 = u1 - g1 * (u1 - u0) / (g1 - g0);
    u0 = u1;
    g0 = g1;
    u1 = u2;
    if (!(u1 >= lo - du && u1 <= hi + du)) {
      ok = false;
      break;
    }
    g1 = g(u1);
  }
  if (!ok || !std::isfinite(u1)) {
    // Golden-section fallback on the bracket.
    constexpr double r = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = filament::distance(im.eval(c), y), fd = filament::distance(im.eval(d), y);
    for (int it = 0; it < 80; ++it) {
      if (fc < fd) { b = d; d = c; fd = fc; c = b - r * (b - a); fc = filament::distance(im.eval(c), y); }
      else { a = c; c = d; fc = fd; d = a + r * (b - a); fd = filament::distance(im.eval(d), y); }
    }
    u1 = 0.5 * (a + b);
  }
  u1 = std::clamp(u1, lo, hi);

  Projection best{im.eval(u1), u1, filament::distance(im.eval(u1), y)};
  auto try_u = [&](double u) {
    const Point2 q = im.eval(u);
    const double d = filament::distance(q, y);
    if (d < best.distance) best = {q, u, d};
  };
  try_u(lo);
  try_u(hi);
  if (closed()) best.u -= std::floor(best.u);
  return best;
}

std::vector<Point2> FilamentCurve::sample(double spacing) const {
  if (!(spacing > 0.0)) throw Error("curve sample: spacing must be positive");
  const auto n = static_cast<std::size_t>(std::ceil(arclength_ / spacing));
  std::vector<Point2> out;
  const std::size_t count = closed() ? std::max<std::size_t>(n, 3) : std::max<std::size_t>(n, 1) + 1;
  const double denom = closed() ? static_cast<double>(count) : static_cast<double>(count - 1);
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(eval(static_cast<double>(k) / denom));
  return out;
}

// ---------------------------------------------------------------------------
// Families

FilamentCurve build_curve(const CurveSpec& spec) {
  const int m = spec.resolution;
  if (m < 16) throw Error("curve resolution must be >= 16");
  const Point2 c{spec.param("cx", 0.0), spec.param("cy", 0.0)};
  const std::string& fam = spec.family;

  if (fam == "circle") {
    const double r = spec.param("r", 1.0);
    if (!(r > 0.0)) throw Error("circle: r must be positive");
    return FilamentCurve::from_parametric(
        [c, r](double t) { return c + r * unit_vector(kTwoPi * t); }, Topology::closed, m,
        [r](double t) { return (kTwoPi * r) * perp(unit_vector(kTwoPi * t)); });
  }
  if (fam == "ellipse") {
    const double a = spec.param("a", 2.0);
    const double b = spec.param("b", 1.0);
    if (!(a > 0.0 && b > 0.0)) throw Error("ellipse: a and b must be positive");
    return FilamentCurve::from_parametric(
        [c, a, b](double t) {
          return c + Point2{a * std::cos(kTwoPi * t), b * std::sin(kTwoPi * t)};
        },
        Topology::closed, m,
        [a, b](double t) {
          return kTwoPi * Point2{-a * std::sin(kTwoPi * t), b * std::cos(kTwoPi * t)};
        });
  }
  if (fam == "segment") {
    const Point2 a{spec.param("x0", 0.0), spec.param("y0", 0.0)};
    const Point2 b{spec.param("x1", 1.0), spec.param("y1", 0.0)};
    if (a == b) throw Error("segment: endpoints coincide");
    return FilamentCurve::from_parametric([a, b](double t) { return a + t * (b - a); },
                                          Topology::open, m, [a, b](double) { return b - a; });
  }
  if (fam == "sine-arc") {
    const double len = spec.param("length", 1.6);
    const double amp = spec.param("amplitude", 0.2);
    const double cyc = spec.param("cycles", 1.0);
    if (!(len > 0.0)) throw Error("sine-arc: length must be positive");
    return FilamentCurve::from_parametric(
        [c, len, amp, cyc](double t) {
          return c + Point2{-0.5 * len + len * t, amp * std::sin(kTwoPi * cyc * t)};
        },
        Topology::open, m,
        [len, amp, cyc](double t) {
          return Point2{len, amp * kTwoPi * cyc * std::cos(kTwoPi * cyc * t)};
        });
  }
  if (fam == "spiral") {
    const double r0 = spec.param("r0", 0.3);
    const double growth = spec.param("growth", 0.05);
    const double turns = spec.param("turns", 1.5);
    if (!(r0 > 0.0 && turns > 0.0)) throw Error("spiral: r0 and turns must be positive");
    const double w = kTwoPi * turns;
    return FilamentCurve::from_parametric(
        [c, r0, growth, w](double t) {
          const double th = w * t;
          return c + (r0 + growth * th) * unit_vector(th);
        },
        Topology::open, m,
        [r0, growth, w](double t) {
          const double th = w * t;
          return w * (growth * unit_vector(th) + (r0 + growth * th) * perp(unit_vector(th)));
        });
  }
  if (fam == "user-polyline") {
    return FilamentCurve::from_polyline(spec.points, spec.closed, m);
  }
  throw Error("unknown curve family '" + fam + "'");
}

// ---------------------------------------------------------------------------
// Thickness

ThicknessReport thickness(const FilamentCurve& curve, int brute_force_resolution) {
  const int m = brute_force_resolution;
  if (m < 3 || curve.vertices().size() < 3) throw Error("thickness needs at least 3 vertices");
  const bool closed = curve.closed();
  std::vector<double> us(static_cast<std::size_t>(m));
  std::vector<Point2> pts(us.size());
  for (int i = 0; i < m; ++i) {
    us[i] = closed ? static_cast<double>(i) / m : static_cast<double>(i) / (m - 1);
    pts[i] = curve.eval(us[i]);
  }

  double best = std::numeric_limits<double>::infinity();
  std::array<int, 3> arg{0, 1, 2};
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        const double r = circumradius(pts[i], pts[j], pts[k]);
        if (r < best) {
          best = r;
          arg = {i, j, k};
        }
      }
    }
  }

  ThicknessReport rep;
  // Discrete radius of curvature from consecutive vertices at full resolution.
  const auto& v = curve.vertices();
  const std::size_t n = v.size();
  double curv = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    if (!closed && (k == 0 || k + 1 == n)) continue;
    curv = std::min(curv, circumradius(v[(k + n - 1) % n], v[k], v[(k + 1) % n]));
  }
  rep.curvature_bound = std::min(curv, kInfiniteThickness);

  std::array<double, 3> u{us[arg[0]], us[arg[1]], us[arg[2]]};
  if (std::isfinite(best)) {
    // Local coordinate-wise golden-section refinement, keeping the three
    // parameters distinct.
    constexpr double min_sep = 1e-4;
    auto sep = [&](double a, double b) {
      const double d = std::abs(a - b);
      return closed ? std::min(d, 1.0 - d) : d;
    };
    auto objective = [&](const std::array<double, 3>& w) {
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
          if (sep(w[a], w[b]) < min_sep) return std::numeric_limits<double>::infinity();
      const double r = circumradius(curve.eval(w[0]), curve.eval(w[1]), curve.eval(w[2]));
      return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
    };
    double width = 1.0 / m;
    for (int round = 0; round < 12; ++round) {
      for (int c = 0; c < 3; ++c) {
        constexpr double g = 0.6180339887498949;
        double a = u[c] - width, b = u[c] + width;
        if (!closed) {
          a = std::max(a, 0.0);
          b = std::min(b, 1.0);
        }
        auto at = [&](double x) {
          std::array<double, 3> w = u;
          w[c] = x;
          return objective(w);
        };
        double x1 = b - g * (b - a), x2 = a + g * (b - a);
        double f1 = at(x1), f2 = at(x2);
        for (int it = 0; it < 40; ++it) {
          if (f1 < f2) { b = x2; x2 = x1; f2 = f1; x1 = b - g * (b - a); f1 = at(x1); }
          else { a = x1; x1 = x2; f1 = f2; x2 = a + g * (b - a); f2 = at(x2); }
        }
        const double xm = 0.5 * (a + b);
        std::array<double, 3> w = u;
        w[c] = xm;
        if (objective(w) < objective(u)) u = w;
      }
      width *= 0.7;
    }
    best = std::min(best, objective(u));
  }
  rep.lower_witness = {curve.eval(u[0]), curve.eval(u[1]), curve.eval(u[2])};
  rep.delta = std::min({best, rep.curvature_bound, kInfiniteThickness});
  return rep;
}

// ---------------------------------------------------------------------------
// SupportModel

SupportModel::SupportModel(FilamentCurve curve, double sigma, double thickness)
    : curve_(std::move(curve)), sigma_(sigma), thickness_(thickness) {}

SupportModel::SupportModel(FilamentCurve curve, double sigma)
    : curve_(std::move(curve)), sigma_(sigma) {
  if (!(sigma > 0.0)) throw Error("sigma must be positive");
  thickness_ = filament::thickness(curve_).delta;
  if (!(sigma_ < thickness_)) throw Error("thickness violated");
  if (!curve_.closed() && !(filament::distance(curve_.eval(0.0), curve_.eval(1.0)) > 2.0 * sigma_)) {
    throw Error("thickness violated");
  }
}

SupportModel SupportModel::unchecked(FilamentCurve curve, double sigma) {
  if (!(sigma > 0.0)) throw Error("sigma must be positive");
  return SupportModel(std::move(curve), sigma, std::numeric_limits<double>::quiet_NaN());
}

bool SupportModel::contains(Point2 y) const { return curve_.distance(y) <= sigma_; }

double SupportModel::edt(Point2 y) const { return std::abs(sigma_ - curve_.distance(y)); }

Segment SupportModel::fiber(double u) const {
  const Point2 f = curve_.eval(u);
  const Point2 nrm = curve_.normal(u);
  return {f - sigma_ * nrm, f + sigma_ * nrm};
}

std::vector<Point2> SupportModel::offset_samples(int side, double spacing) const {
  if (!(spacing > 0.0)) throw Error("offset sample: spacing must be positive");
  // Offset speed is at most phi * (1 + sigma / Delta) < 2 phi.
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * curve_.arclength() / spacing)) + 1;
  std::vector<Point2> out;
  out.reserve(n + 1);
  const double s = side >= 0 ? sigma_ : -sigma_;
  const std::size_t last = curve_.closed() ? n - 1 : n;
  for (std::size_t k = 0; k <= last; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(n);
    out.push_back(curve_.eval(u) + s * curve_.normal(u));
  }
  return out;
}

std::vector<Point2> SupportModel::cap_samples(int end, double spacing) const {
  std::vector<Point2> out;
  if (curve_.closed()) return out;
  const double u = end == 0 ? 0.0 : 1.0;
  const Point2 center = curve_.eval(u);
  const Point2 nrm = curve_.normal(u);
  const Point2 dir = end == 0 ? nrm : -nrm;
  const double a0 = std::atan2(dir.y, dir.x);
  const auto n = static_cast<std::size_t>(std::ceil(std::numbers::pi * sigma_ / spacing)) + 1;
  for (std::size_t k = 0; k <= n; ++k) {
    out.push_back(center + sigma_ * unit_vector(a0 + std::numbers::pi * static_cast<double>(k) /
                                                         static_cast<double>(n)));
  }
  return out;
}

std::vector<Point2> SupportModel::boundary_samples(double spacing) const {
  std::vector<Point2> out = offset_samples(+1, spacing);
  const std::vector<Point2> other = offset_samples(-1, spacing);
  out.insert(out.end(), other.begin(), other.end());
  for (int end = 0; end < 2; ++end) {
    const std::vector<Point2> cap = cap_samples(end, spacing);
    out.insert(out.end(), cap.begin(), cap.end());
  }
  return out;
}

}  // namespace filament
