#pragma once

// Ground-truth filaments: arclength-parameterized curves, their thickness, and
// the support S = union of B(f(u), sigma) with its exact boundary distance.

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "filament/geom.hpp"
#include "filament/spatial_grid.hpp"

namespace filament {

enum class Topology { open, closed };

std::string to_string(Topology t);

/// Thickness values at or above this stand in for +infinity.
inline constexpr double kInfiniteThickness = 1e12;

/// Named curve family plus numeric parameters, e.g. {"circle", {{"r", 1}}}.
/// `points` is only used by the "user-polyline" family.
struct CurveSpec {
  std::string family = "circle";
  std::map<std::string, double> params;
  std::vector<Point2> points;
  bool closed = false;  // user-polyline only
  int resolution = 512;

  double param(const std::string& key, double fallback) const;
};

/// A filament f: [0,1] -> R^2 parameterized by normalized arclength, stored as
/// a dense polyline with equal chords plus an exact evaluator used for
/// projections.
class FilamentCurve {
 public:
  using Parametric = std::function<Point2(double)>;

  /// Builds a curve from any regular parameterization p(t), t in [0,1].
  /// For closed curves p(0) must equal p(1).
  static FilamentCurve from_parametric(Parametric p, Topology topology, int resolution,
                                       Parametric derivative = {});

  /// Piecewise-linear curve through `points`. Throws "not simple" if the
  /// polyline self-intersects.
  static FilamentCurve from_polyline(std::vector<Point2> points, bool closed, int resolution);

  /// Exact position at normalized arclength u.
  Point2 eval(double u) const;
  Point2 tangent(double u) const;
  Point2 normal(double u) const { return perp(tangent(u)); }

  Topology topology() const { return topology_; }
  bool closed() const { return topology_ == Topology::closed; }
  /// Total arclength (phi); |f'(u)| = phi.
  double arclength() const { return arclength_; }

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<double>& vertex_params() const { return params_; }
  const std::vector<Point2>& tangents() const { return tangents_; }
  const std::vector<Point2>& normals() const { return normals_; }
  Polyline polyline() const { return Polyline{vertices_, closed()}; }

  struct Projection {
    Point2 point;
    double u = 0.0;
    double distance = 0.0;
  };
  /// Nearest curve point to `y`, refined on the exact parameterization.
  Projection project(Point2 y) const;
  double distance(Point2 y) const { return project(y).distance; }

  /// Exact curve points with arclength spacing <= `spacing` (endpoints
  /// included for open curves).
  std::vector<Point2> sample(double spacing) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  Topology topology_ = Topology::open;
  double arclength_ = 0.0;
  std::vector<Point2> vertices_;
  std::vector<double> params_;
  std::vector<Point2> tangents_;
  std::vector<Point2> normals_;
  std::shared_ptr<const SpatialGrid> vertex_grid_;
  double chord_ = 0.0;
};

/// Builds a curve from a named family: circle(r, cx, cy), ellipse(a, b, cx,
/// cy), segment(x0, y0, x1, y1), sine-arc(length, amplitude, cycles, cx, cy),
/// spiral(r0, growth, turns, cx, cy), user-polyline. Throws on unknown
/// families or resolution < 16.
FilamentCurve build_curve(const CurveSpec& spec);

struct ThicknessReport {
  double delta = 0.0;
  std::array<Point2, 3> lower_witness{};
  double curvature_bound = 0.0;
};

/// Minimum circumradius over triples of curve points (the thickness Delta),
/// from a brute-force pass over a 200-point resampling refined by local
/// golden-section search. Collinear triples count as +infinity.
ThicknessReport thickness(const FilamentCurve& curve, int brute_force_resolution = 200);

struct Segment {
  Point2 a;
  Point2 b;
};

/// The true support S = union of closed balls B(f(u), sigma).
class SupportModel {
 public:
  /// Validates sigma < Delta(curve) and, for open curves,
  /// |f(1) - f(0)| > 2 sigma. Throws "thickness violated" otherwise.
  SupportModel(FilamentCurve curve, double sigma);

  /// Skips the geometric validation (multi-filament examples that
  /// deliberately intersect).
  static SupportModel unchecked(FilamentCurve curve, double sigma);

  const FilamentCurve& curve() const { return curve_; }
  double sigma() const { return sigma_; }
  double thickness() const { return thickness_; }

  bool contains(Point2 y) const;
  /// Exact distance from y to the boundary of S (inside or outside).
  double edt(Point2 y) const;

  /// Normal segment of half-length sigma through f(u).
  Segment fiber(double u) const;

  /// Samples of the offset curve f(u) + side * sigma * N(u), u in [0,1], at
  /// spacing <= `spacing`. side is +1 or -1.
  std::vector<Point2> offset_samples(int side, double spacing) const;

  /// Samples of the end cap arc at f(0) (end = 0) or f(1) (end = 1).
  std::vector<Point2> cap_samples(int end, double spacing) const;

  /// Samples of the whole boundary of S.
  std::vector<Point2> boundary_samples(double spacing) const;

 private:
  SupportModel(FilamentCurve curve, double sigma, double thickness);
  FilamentCurve curve_;
  double sigma_ = 0.0;
  double thickness_ = 0.0;
};

}  // namespace filament
