#pragma once

// Draws data from the filament model Y = f(U) + noise, optionally mixed with
// uniform background clutter and several filaments.

#include <cstdint>
#include <random>
#include <vector>

#include "filament/geom.hpp"
#include "filament/model.hpp"

namespace filament {

/// Reproducible stream: 64-bit Mersenne twister with a fixed,
/// library-independent conversion to doubles.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Noise supported on B(0, sigma) with planar density proportional to
/// (sigma - |x|)^beta.
struct NoiseSpec {
  double sigma = 0.1;
  double beta = 0.0;
  /// Boundary exponent of the data density, alpha = beta + 1/2.
  double alpha() const { return beta + 0.5; }
  void validate() const;
};

/// Inverse-CDF sampler for the noise radius (4096 knots, linear
/// interpolation).
class NoiseSampler {
 public:
  explicit NoiseSampler(NoiseSpec spec);
  const NoiseSpec& spec() const { return spec_; }
  /// Radial CDF P(|eps| <= r) in closed form.
  double radial_cdf(double r) const;
  double radius_from_uniform(double p) const;
  Point2 draw(Rng& rng) const;

 private:
  NoiseSpec spec_;
  std::vector<double> cdf_;  // at uniform radius knots
};

/// Draws one noise offset.
Point2 draw_noise(const NoiseSpec& spec, Rng& rng);

/// Density h of U on [0,1]: uniform, or proportional to 1 + a cos(2 pi u)
/// with |a| <= 0.5.
struct ArclengthDensity {
  double cosine_amplitude = 0.0;
  void validate() const;
  double pdf(double u) const { return 1.0 + cosine_amplitude * std::cos(kTwoPi * u); }
  double draw(Rng& rng) const;
};

struct SamplerConfig {
  std::vector<FilamentCurve> curves;
  std::vector<double> weights;  // empty = equal weights
  ArclengthDensity h;
  NoiseSpec noise;
  std::size_t n = 1000;
  double eta = 1.0;  // filament fraction
  BoundingBox clutter_region{{-1.0, -1.0}, {1.0, 1.0}};
  std::uint64_t seed = 1;
  bool enforce_thickness = true;
};

inline constexpr int kClutterLabel = -1;

struct LabeledSample {
  std::vector<Point2> points;
  std::vector<int> labels;  // curve index, or kClutterLabel
  std::uint64_t seed = 0;

  std::vector<Point2> filament_points() const;
};

/// Draws n labeled points. Deterministic given the seed. Throws "thickness
/// violated" if sigma >= Delta for some curve (unless the check is disabled).
LabeledSample sample(const SamplerConfig& config);

/// Exact counts instead of the eta mixture: per_curve[j] points from curve j
/// (in curve order) followed by `clutter` background points. n, eta and the
/// weights are ignored.
LabeledSample sample_counts(const SamplerConfig& config, const std::vector<std::size_t>& per_curve,
                            std::size_t clutter);

}  // namespace filament
