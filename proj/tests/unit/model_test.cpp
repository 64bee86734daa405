#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "filament/error.hpp"
#include "filament/model.hpp"
#include "oracles.hpp"

namespace filament {
namespace {

constexpr double kPi = std::numbers::pi;

FilamentCurve circle(double r = 1.0, int m = 512) { return build_curve({"circle", {{"r", r}}, {}, false, m}); }
FilamentCurve ellipse() { return build_curve({"ellipse", {{"a", 2.0}, {"b", 1.0}}, {}, false, 512}); }
FilamentCurve sine_arc() {
  return build_curve({"sine-arc", {{"length", 1.6}, {"amplitude", 0.2}, {"cycles", 1.0}}, {}, false, 512});
}

TEST(BuildCurve, CircleCircumference) {
  const auto c = build_curve({"circle", {{"r", 1.0}}, {}, false, 256});
  EXPECT_TRUE(c.closed());
  EXPECT_NEAR(c.arclength(), 2.0 * kPi, 1e-4);
}

TEST(BuildCurve, SegmentLength) {
  const auto s = build_curve({"segment", {{"x0", 0}, {"y0", 0}, {"x1", 1}, {"y1", 0}}, {}, false, 64});
  EXPECT_FALSE(s.closed());
  EXPECT_NEAR(s.arclength(), 1.0, 1e-12);
  EXPECT_NEAR(s.eval(0.25).x, 0.25, 1e-12);
}

TEST(BuildCurve, EllipsePerimeterMatchesQuadrature) {
  EXPECT_NEAR(ellipse().arclength(), oracle::ellipse_perimeter(2.0, 1.0), 1e-4);
}

TEST(BuildCurve, RejectsBadInput) {
  EXPECT_THROW(build_curve({"torus", {}, {}, false, 64}), Error);
  EXPECT_THROW(build_curve({"circle", {{"r", 1.0}}, {}, false, 8}), Error);
  try {
    build_curve({"user-polyline", {}, {{0, 0}, {1, 1}, {1, 0}, {0, 1}}, false, 64});
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "not simple");
  }
}

TEST(BuildCurve, ArclengthParameterization) {
  for (const auto& c : {circle(), ellipse(), sine_arc()}) {
    const auto& v = c.vertices();
    const std::size_t segs = c.closed() ? v.size() : v.size() - 1;
    const double first = distance(v[0], v[1]);
    for (std::size_t i = 0; i < segs; ++i) {
      EXPECT_NEAR(distance(v[i], v[(i + 1) % v.size()]), first, 1e-6 * first);
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      EXPECT_NEAR(norm(c.tangents()[i]), 1.0, 1e-12);
      EXPECT_NEAR(dot(c.tangents()[i], c.normals()[i]), 0.0, 1e-12);
    }
  }
}

TEST(BuildCurve, AllFamiliesConstruct) {
  EXPECT_TRUE(build_curve({"spiral", {{"r0", 0.3}, {"growth", 0.1}, {"turns", 1.5}}, {}, false, 256}).arclength() > 0);
  const auto poly = build_curve({"user-polyline", {}, {{0, 0}, {1, 0}, {1, 1}}, false, 64});
  EXPECT_NEAR(poly.arclength(), 2.0, 1e-9);
}

TEST(Thickness, Circle) { EXPECT_NEAR(thickness(circle()).delta, 1.0, 1e-3); }

TEST(Thickness, SegmentIsInfinite) {
  const auto s = build_curve({"segment", {{"x0", 0}, {"y0", 0}, {"x1", 1}, {"y1", 0}}, {}, false, 64});
  EXPECT_GE(thickness(s).delta, kInfiniteThickness);
}

TEST(Thickness, EllipseMatchesBruteForceAndCurvature) {
  const auto e = ellipse();
  const auto rep = thickness(e);
  EXPECT_NEAR(rep.delta, 0.5, 1e-2);
  EXPECT_LE(rep.delta, rep.curvature_bound + 1e-12);
  std::vector<Point2> pts;
  for (int i = 0; i < 200; ++i) pts.push_back(e.eval(i / 200.0));
  EXPECT_NEAR(rep.delta, oracle::brute_force_thickness(pts), 1e-2);
}

TEST(SupportModel, ValidatesThicknessAndEndpoints) {
  EXPECT_THROW(SupportModel(circle(), 1.2), Error);
  const auto s = build_curve({"segment", {{"x0", 0}, {"y0", 0}, {"x1", 0.3}, {"y1", 0}}, {}, false, 64});
  EXPECT_THROW(SupportModel(s, 0.2), Error);
  EXPECT_NO_THROW(SupportModel(s, 0.1));
}

TEST(TrueEdt, AnnulusGeometry) {
  const SupportModel m(circle(), 0.2);
  EXPECT_NEAR(m.edt({1.1, 0.0}), 0.1, 1e-9);
  EXPECT_NEAR(m.edt(unit_vector(0.77)), 0.2, 1e-9);
  EXPECT_NEAR(m.edt({0.0, 0.0}), 0.8, 1e-9);
}

TEST(TrueEdt, MedialIdentityAndDenseBoundary) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.2, 2.2);
  const FilamentCurve e = ellipse();
  const SupportModel m(e, 0.3);
  const auto boundary = m.boundary_samples(2e-4);
  int checked = 0;
  while (checked < 300) {
    const Point2 y{u(rng), u(rng)};
    if (!m.contains(y)) continue;
    ++checked;
    EXPECT_NEAR(m.edt(y) + e.distance(y), 0.3, 1e-6);
    EXPECT_NEAR(m.edt(y), oracle::min_distance(y, boundary), 1e-5);
  }
}

TEST(TrueEdt, OpenCurveUsesCaps) {
  const auto s = build_curve({"segment", {{"x0", 0}, {"y0", 0}, {"x1", 1}, {"y1", 0}}, {}, false, 64});
  const SupportModel m(s, 0.1);
  EXPECT_NEAR(m.edt({-0.05, 0.0}), 0.05, 1e-9);
  EXPECT_NEAR(m.edt({1.2, 0.0}), 0.1, 1e-9);
  const auto caps = m.cap_samples(0, 1e-3);
  for (Point2 p : caps) EXPECT_NEAR(distance(p, {0, 0}), 0.1, 1e-9);
}

TEST(SupportContains, MatchesDenseCurveSampling) {
  const FilamentCurve c = sine_arc();
  const SupportModel m(c, 0.1);
  EXPECT_TRUE(m.contains(c.eval(0.5)));
  std::vector<Point2> dense;
  for (int i = 0; i <= 100000; ++i) dense.push_back(c.eval(i / 100000.0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(-0.5, 0.5);
  for (int i = 0; i < 1000; ++i) {
    const Point2 y{ux(rng), uy(rng)};
    const double d = oracle::min_distance(y, dense);
    if (std::abs(d - 0.1) < 1e-6) continue;  // too close to call with the sampled oracle
    EXPECT_EQ(m.contains(y), d <= 0.1) << y.x << "," << y.y;
  }
}

TEST(SupportModel, FibersAreDisjoint) {
  const SupportModel m(ellipse(), 0.4);
  std::vector<Segment> fibers;
  for (int i = 0; i < 200; ++i) fibers.push_back(m.fiber(i / 200.0));
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    for (std::size_t j = i + 1; j < fibers.size(); ++j) {
      EXPECT_FALSE(segments_intersect(fibers[i].a, fibers[i].b, fibers[j].a, fibers[j].b)) << i << " " << j;
    }
  }
}

TEST(SupportModel, EdtArgmaxLiesOnCurve) {
  const FilamentCurve e = ellipse();
  const SupportModel m(e, 0.3);
  const double h = 0.01;
  double best = -1.0;
  Point2 arg;
  for (double x = -2.4; x <= 2.4; x += h) {
    for (double y = -1.4; y <= 1.4; y += h) {
      if (!m.contains({x, y})) continue;
      const double v = m.edt({x, y});
      if (v > best) {
        best = v;
        arg = {x, y};
      }
    }
  }
  EXPECT_LE(e.distance(arg), h);
  EXPECT_NEAR(m.edt(e.project(arg).point), 0.3, 1e-6);
}

TEST(SupportModel, StandardnessQuarter) {
  const SupportModel m(circle(), 0.2);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.3, 1.3), unit(-1.0, 1.0);
  for (int trial = 0; trial < 50;) {
    const Point2 y{u(rng), u(rng)};
    if (!m.contains(y)) continue;
    ++trial;
    const double eps = 0.2 * (0.1 + 0.9 * std::abs(unit(rng)));
    int hit = 0, total = 0;
    while (total < 4000) {
      const Point2 d{unit(rng), unit(rng)};
      if (norm2(d) > 1.0) continue;
      ++total;
      if (m.contains(y + eps * d)) ++hit;
    }
    EXPECT_GE(hit / 4000.0, 0.25 - 0.03);
  }
}

TEST(TrueEdt, OneLipschitz) {
  const SupportModel m(sine_arc(), 0.1);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Point2 a{u(rng), 0.5 * u(rng)}, b{u(rng), 0.5 * u(rng)};
    if (!m.contains(a) || !m.contains(b)) continue;
    EXPECT_LE(std::abs(m.edt(a) - m.edt(b)), distance(a, b) + 1e-9);
  }
}

TEST(FilamentCurve, ProjectionIsExact) {
  const FilamentCurve c = circle(1.0, 64);
  const auto p = c.project({2.0 * std::cos(0.3), 2.0 * std::sin(0.3)});
  EXPECT_NEAR(p.distance, 1.0, 1e-9);
  EXPECT_NEAR(p.u, 0.3 / kTwoPi, 1e-9);
}

}  // namespace
}  // namespace filament
