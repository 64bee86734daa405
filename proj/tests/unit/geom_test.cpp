#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "filament/error.hpp"
#include "filament/geom.hpp"
#include "oracles.hpp"

namespace filament {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Point2> circle_points(std::size_t n, double r = 1.0, double phase = 0.0) {
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(r * unit_vector(phase + kTwoPi * i / n));
  return pts;
}

TEST(Hausdorff, SinglePair) {
  const std::vector<Point2> a{{0, 0}}, b{{3, 4}};
  EXPECT_DOUBLE_EQ(hausdorff_distance(a, b), 5.0);
}

TEST(Hausdorff, IdenticalSetsAreZero) {
  const auto a = circle_points(37);
  EXPECT_EQ(hausdorff_distance(a, a), 0.0);
}

TEST(Hausdorff, EmptySetThrows) {
  const std::vector<Point2> a{{0, 0}}, none;
  EXPECT_THROW(hausdorff_distance(a, none), Error);
  EXPECT_THROW(hausdorff_distance(none, a), Error);
}

TEST(Hausdorff, PolygonSamplesMatchDoubleLoop) {
  const auto a = circle_points(100);
  const auto b = circle_points(200, 1.0, 0.01);
  EXPECT_EQ(hausdorff_distance(a, b), oracle::hausdorff_double_loop(a, b));
}

TEST(Hausdorff, DirectedPartsBoundSymmetric) {
  const auto a = circle_points(50, 1.0);
  const auto b = circle_points(80, 1.3);
  const double h = hausdorff_distance(a, b);
  EXPECT_LE(directed_hausdorff(a, b), h);
  EXPECT_LE(directed_hausdorff(b, a), h);
  EXPECT_EQ(h, std::max(directed_hausdorff(a, b), directed_hausdorff(b, a)));
}

TEST(Hausdorff, TriangleInequalityOnRandomTriples) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto cloud = [&](int n) {
    std::vector<Point2> p(n);
    for (auto& q : p) q = {u(rng), u(rng)};
    return p;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = cloud(5 + trial % 17), b = cloud(3 + trial % 11), c = cloud(8 + trial % 5);
    EXPECT_LE(hausdorff_distance(a, c), hausdorff_distance(a, b) + hausdorff_distance(b, c) + 1e-12);
  }
}

TEST(ArcDistance, FullCircle) {
  const Arc c = Arc::circle({0, 0}, 1.0);
  EXPECT_DOUBLE_EQ(point_to_arc_distance({2, 0}, c), 1.0);
}

TEST(ArcDistance, EndpointIsZero) {
  const Arc a = Arc::from_span({0.3, -0.2}, 0.7, 1.0, 2.0);
  EXPECT_NEAR(point_to_arc_distance(a.start_point(), a), 0.0, 1e-15);
  EXPECT_NEAR(point_to_arc_distance(a.end_point(), a), 0.0, 1e-15);
}

TEST(ArcDistance, FullCircleIsRadialGapExactly) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const Point2 c{u(rng), u(rng)};
    const double r = 0.1 + std::abs(u(rng));
    const Point2 p{u(rng), u(rng)};
    EXPECT_NEAR(point_to_arc_distance(p, Arc::circle(c, r)), std::abs(distance(p, c) - r), 1e-14);
  }
}

TEST(ArcDistance, RandomArcsMatchDenseSampling) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0), ang(0.0, kTwoPi), span(0.01, kTwoPi);
  for (int i = 0; i < 100; ++i) {
    const Arc arc = Arc::from_span({u(rng), u(rng)}, 0.2 + std::abs(u(rng)), ang(rng), span(rng));
    const Point2 p{u(rng), u(rng)};
    EXPECT_NEAR(point_to_arc_distance(p, arc), oracle::arc_distance_dense(p, arc), 1e-6);
  }
}

TEST(ArcProjection, OffsetIsArclengthFromStart) {
  const Arc arc = Arc::from_span({0, 0}, 2.0, 0.5, 2.0);
  const ArcProjection pr = project_onto_arc(3.0 * unit_vector(1.5), arc);
  EXPECT_NEAR(pr.t_length, 2.0 * 1.0, 1e-12);
  EXPECT_NEAR(pr.distance, 1.0, 1e-12);
}

TEST(AngularCover, HalfCircleComplement) {
  AngularIntervalSet cover;
  cover.add(0.0, kPi);
  const auto free = subtract_angular_cover(cover);
  ASSERT_EQ(free.intervals().size(), 1u);
  EXPECT_NEAR(free.intervals()[0].lo, kPi, 1e-12);
  EXPECT_NEAR(free.intervals()[0].hi, kTwoPi, 1e-12);
}

TEST(AngularCover, EmptyCoverIsFullCircle) {
  const auto free = subtract_angular_cover({});
  EXPECT_TRUE(free.is_full());
  EXPECT_NEAR(free.measure(), kTwoPi, 1e-12);
}

TEST(AngularCover, WrappingIntervalStoredAsTwoPieces) {
  AngularIntervalSet s;
  s.add(kTwoPi - 0.5, 1.0);
  EXPECT_EQ(s.intervals().size(), 2u);
  EXPECT_NEAR(s.measure(), 1.0, 1e-12);
  EXPECT_TRUE(s.contains(0.0));
  const auto spans = s.spans();
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_NEAR(spans[0].extent, 1.0, 1e-12);
}

TEST(AngularCover, RandomIntervalsMatchRasterization) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(-kTwoPi, 2.0 * kTwoPi), span(0.0, 0.6);
  for (int trial = 0; trial < 50; ++trial) {
    AngularIntervalSet cover;
    std::vector<std::pair<double, double>> raw;
    for (int k = 0; k < 20; ++k) {
      const double s = ang(rng), w = span(rng);
      cover.add(s, w);
      raw.push_back({s, w});
    }
    const auto free = subtract_angular_cover(cover);
    EXPECT_NEAR(free.measure(), oracle::uncovered_measure_raster(raw), kTwoPi * 1e-3);
    EXPECT_NEAR(free.measure() + cover.measure(), kTwoPi, 1e-9);
    for (std::size_t i = 1; i < free.intervals().size(); ++i) {
      EXPECT_LT(free.intervals()[i - 1].hi, free.intervals()[i].lo);
    }
  }
}

TEST(Winding, UnitCircleInsideAndOutside) {
  const Polyline ring{circle_points(64), true};
  EXPECT_EQ(winding_number(ring, {0, 0}), 1);
  EXPECT_EQ(winding_number(ring, {5, 5}), 0);
  Polyline cw = ring;
  std::reverse(cw.vertices.begin(), cw.vertices.end());
  EXPECT_EQ(winding_number(cw, {0, 0}), -1);
}

TEST(Winding, PointOnCurveIsDegenerate) {
  const Polyline ring{circle_points(64), true};
  EXPECT_THROW(winding_number(ring, ring.vertices[3]), Error);
}

TEST(Winding, RandomStarPolygonsMatchOracles) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> rad(0.3, 1.0), u(-1.2, 1.2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point2> star;
    const int k = 5 + trial % 20;
    for (int i = 0; i < k; ++i) star.push_back(rad(rng) * unit_vector(kTwoPi * i / k));
    const Polyline poly{star, true};
    for (int q = 0; q < 20; ++q) {
      const Point2 p{u(rng), u(rng)};
      const int w = winding_number(poly, p);
      EXPECT_EQ(w, oracle::winding_angle_sum(star, p));
      EXPECT_EQ(std::abs(w) % 2, oracle::crossing_parity(star, p));
    }
  }
}

TEST(Winding, SimpleCcwPolygonIsOneInsideZeroOutside) {
  const std::vector<Point2> l_shape{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  const Polyline poly{l_shape, true};
  EXPECT_EQ(winding_number(poly, {0.5, 0.5}), 1);
  EXPECT_EQ(winding_number(poly, {0.5, 1.5}), 1);
  EXPECT_EQ(winding_number(poly, {1.5, 1.5}), 0);
  EXPECT_EQ(winding_number(poly, {-1, 0.5}), 0);
}

TEST(Polyline, ValidateRejectsBadInput) {
  EXPECT_THROW((Polyline{{{0, 0}}, false}).validate(), Error);
  EXPECT_THROW((Polyline{{{0, 0}, {1, 0}, {0, 0}}, true}).validate(), Error);
  EXPECT_THROW((Polyline{{{0, 0}, {NAN, 0}}, false}).validate(), Error);
  EXPECT_NO_THROW((Polyline{{{0, 0}, {1, 0}}, false}).validate());
}

TEST(Polyline, SimplicityDetectsBowtie) {
  EXPECT_FALSE(is_simple(Polyline{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}, true}));
  EXPECT_TRUE(is_simple(Polyline{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true}));
}

TEST(Polyline, SampleKeepsVerticesAndSpacing) {
  const Polyline p{{{0, 0}, {1, 0}, {1, 0.35}}, false};
  const auto s = p.sample(0.1);
  EXPECT_EQ(s.front(), (Point2{0, 0}));
  EXPECT_EQ(s.back(), (Point2{1, 0.35}));
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LE(distance(s[i - 1], s[i]), 0.1 + 1e-12);
  EXPECT_NEAR(p.length(), 1.35, 1e-15);
}

TEST(Geometry, CircumradiusOfCirclePoints) {
  EXPECT_NEAR(circumradius(unit_vector(0.1), unit_vector(1.7), unit_vector(4.0)), 1.0, 1e-12);
  EXPECT_TRUE(std::isinf(circumradius({0, 0}, {1, 1}, {2, 2})));
}

TEST(Geometry, NormalizeAngle) {
  EXPECT_NEAR(normalize_angle(-0.5), kTwoPi - 0.5, 1e-15);
  EXPECT_NEAR(normalize_angle(7.0), 7.0 - kTwoPi, 1e-15);
  EXPECT_NEAR(ccw_delta(kTwoPi - 0.1, 0.1), 0.2, 1e-12);
}

}  // namespace
}  // namespace filament
