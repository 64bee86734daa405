#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "filament/edt.hpp"
#include "filament/error.hpp"
#include "filament/sampler.hpp"
#include "oracles.hpp"

namespace filament {
namespace {

// Balls of radius w on 2000 points of the unit circle: an annulus between
// radii 1 - w and 1 + w up to scallops of depth ~1e-5.
std::shared_ptr<const SupportEstimate> dense_annulus(double w) {
  std::vector<Point2> c;
  for (int i = 0; i < 2000; ++i) c.push_back(unit_vector(kTwoPi * i / 2000));
  return SupportEstimate::build(c, w);
}

struct Simulated {
  FilamentCurve truth;
  std::shared_ptr<const SupportEstimate> support;
};

Simulated circle_data(std::uint64_t seed) {
  SamplerConfig c;
  c.curves = {build_curve({"circle", {{"r", 1.0}}, {}, false, 512})};
  c.noise = {0.2, 0.0};
  c.n = 4000;
  c.seed = seed;
  const auto data = sample(c);
  return {c.curves[0], SupportEstimate::build(data.points, nn_max_epsilon(data.points))};
}

TEST(EstimateSigma, SingleBall) {
  const auto s = SupportEstimate::build({{0.3, -0.1}}, 0.2);
  const auto est = estimate_sigma(*s);
  EXPECT_NEAR(est.sigma_hat, 0.2, 1e-6);
  EXPECT_NEAR(distance(est.y_hat, {0.3, -0.1}), 0.0, 1e-6);
}

TEST(EstimateSigma, Annulus) {
  const auto est = estimate_sigma(*dense_annulus(0.2));
  EXPECT_NEAR(est.sigma_hat, 0.2, 1e-4);
  EXPECT_NEAR(norm(est.y_hat), 1.0, 1e-4);
}

TEST(EdtRegion, AnnulusRidge) {
  const auto s = dense_annulus(0.2);
  const double step = 0.01;
  const auto edt = edt_region(s, estimate_sigma(*s), step, step);
  ASSERT_FALSE(edt.region_points().empty());
  for (Point2 p : edt.region_points()) EXPECT_NEAR(norm(p), 1.0, step + 1e-4);
}

TEST(EdtRegion, MembershipIsExactRecomputation) {
  const auto sim = circle_data(7);
  EdtOptions opt;
  const auto edt = edt_region(sim.support, opt);
  EXPECT_DOUBLE_EQ(edt.delta(), 2.0 * sim.support->epsilon());
  EXPECT_DOUBLE_EQ(edt.grid_step(), sim.support->epsilon() / 4.0);
  for (Point2 p : edt.region_points()) {
    ASSERT_TRUE(sim.support->contains(p));
    ASSERT_GE(sim.support->distance_to_boundary(p), edt.threshold());
  }
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.3, 1.3);
  for (int i = 0; i < 2000; ++i) {
    const Point2 y{u(rng), u(rng)};
    const bool expect = sim.support->contains(y) && sim.support->distance_to_boundary(y) >= edt.threshold();
    EXPECT_EQ(edt.contains(y), expect);
  }
}

TEST(EdtRegion, EmptyRegionThrows) {
  const auto s = dense_annulus(0.2);
  try {
    edt_region(s, SigmaEstimate{0.5, {1, 0}}, 0.0, 0.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "empty EDT region");
  }
}

TEST(EdtRegion, SandwichAndSigmaOnSimulatedData) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto sim = circle_data(seed);
    const SupportModel model(sim.truth, 0.2);
    const double dhb = boundary_error(model, *sim.support, 1e-3).hausdorff;
    const double eps = sim.support->epsilon();
    if (dhb > eps) continue;
    const auto edt = edt_region(sim.support);
    EXPECT_LE(std::abs(edt.sigma_hat() - 0.2), dhb);
    EXPECT_LE(sim.truth.distance(edt.y_hat()), 2.0 * dhb);
    for (int k = 0; k < 1000; ++k) EXPECT_TRUE(edt.contains(sim.truth.eval(k / 1000.0)));
    for (Point2 p : edt.region_points()) EXPECT_LE(sim.truth.distance(p), 4.0 * eps);
  }
}

TEST(LipschitzCheck, ConstructedDilation) {
  const FilamentCurve truth = build_curve({"circle", {{"r", 1.0}}, {}, false, 512});
  const SupportModel model(truth, 0.2);
  const double t = 0.03;
  const auto s = dense_annulus(0.2 + t);
  std::vector<Point2> probes;
  for (int i = 0; i < 400; ++i) probes.push_back((0.85 + 0.3 * (i % 20) / 19.0) * unit_vector(0.0157 * i));
  const auto check = edt_lipschitz_check(model, *s, probes, 1e-3);
  EXPECT_LE(check.max_violation, t + 1e-4);
  EXPECT_NEAR(check.boundary_hausdorff, t, 1e-3);
}

TEST(LipschitzCheck, SimulatedDataWithinBoundaryError) {
  const auto sim = circle_data(11);
  const SupportModel model(sim.truth, 0.2);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.3, 1.3);
  std::vector<Point2> probes;
  while (probes.size() < 1000) {
    const Point2 y{u(rng), u(rng)};
    if (model.contains(y) && sim.support->contains(y)) probes.push_back(y);
  }
  const auto check = edt_lipschitz_check(model, *sim.support, probes, 1e-3);
  EXPECT_LE(check.max_violation, check.boundary_hausdorff + 1e-3);
}

}  // namespace
}  // namespace filament
