#include "filament/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "filament/error.hpp"

namespace filament {

namespace {
constexpr std::size_t kKnots = 4096;
}

void NoiseSpec::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error("noise sigma must be positive");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw Error("noise beta must be finite and >= 0");
}

NoiseSampler::NoiseSampler(NoiseSpec spec) : spec_(spec) {
  spec_.validate();
  cdf_.resize(kKnots);
  for (std::size_t k = 0; k < kKnots; ++k) {
    cdf_[k] = radial_cdf(spec_.sigma * static_cast<double>(k) / static_cast<double>(kKnots - 1));
  }
  cdf_.front() = 0.0;
  cdf_.back() = 1.0;
}

double NoiseSampler::radial_cdf(double r) const {
  const double s = spec_.sigma;
  const double b = spec_.beta;
  r = std::clamp(r, 0.0, s);
  // Integral of x (s - x)^b over [0, r], normalized by its value at r = s.
  const double w = s - r;
  const double num = -r * std::pow(w, b + 1.0) / (b + 1.0) +
                     (std::pow(s, b + 2.0) - std::pow(w, b + 2.0)) / ((b + 1.0) * (b + 2.0));
  const double z = std::pow(s, b + 2.0) / ((b + 1.0) * (b + 2.0));
  return std::clamp(num / z, 0.0, 1.0);
}

double NoiseSampler::radius_from_uniform(double p) const {
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), p);
  if (it == cdf_.begin()) return 0.0;
  if (it == cdf_.end()) return spec_.sigma;
  const std::size_t hi = static_cast<std::size_t>(it - cdf_.begin());
  const std::size_t lo = hi - 1;
  const double f = (p - cdf_[lo]) / (cdf_[hi] - cdf_[lo]);
  const double step = spec_.sigma / static_cast<double>(kKnots - 1);
  return std::min(spec_.sigma, step * (static_cast<double>(lo) + f));
}

Point2 NoiseSampler::draw(Rng& rng) const {
  const double r = radius_from_uniform(rng.uniform());
  const double theta = kTwoPi * rng.uniform();
  return r * unit_vector(theta);
}

Point2 draw_noise(const NoiseSpec& spec, Rng& rng) { return NoiseSampler(spec).draw(rng); }

void ArclengthDensity::validate() const {
  if (!(std::abs(cosine_amplitude) <= 0.5)) throw Error("arclength density: |a| must be <= 0.5");
}

double ArclengthDensity::draw(Rng& rng) const {
  if (cosine_amplitude == 0.0) return rng.uniform();
  const double top = 1.0 + std::abs(cosine_amplitude);
  while (true) {
    const double u = rng.uniform();
    if (rng.uniform() * top <= pdf(u)) return u;
  }
}

std::vector<Point2> LabeledSample::filament_points() const {
  std::vector<Point2> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (labels[i] != kClutterLabel) out.push_back(points[i]);
  }
  return out;
}

LabeledSample sample(const SamplerConfig& config) {
  config.noise.validate();
  config.h.validate();
  if (!(config.eta >= 0.0 && config.eta <= 1.0)) throw Error("eta must lie in [0, 1]");
  if (config.eta > 0.0 && config.curves.empty()) throw Error("sampler needs at least one curve");
  if (config.eta < 1.0 && !(config.clutter_region.area() > 0.0)) {
    throw Error("clutter region must have positive area");
  }

  std::vector<double> cum;
  if (!config.curves.empty()) {
    std::vector<double> w = config.weights;
    if (w.empty()) w.assign(config.curves.size(), 1.0);
    if (w.size() != config.curves.size()) throw Error("one mixture weight per curve required");
    double total = 0.0;
    for (double x : w) {
      if (!(x >= 0.0)) throw Error("mixture weights must be nonnegative");
      total += x;
    }
    if (!(total > 0.0)) throw Error("mixture weights sum to zero");
    double acc = 0.0;
    for (double x : w) cum.push_back(acc += x / total);
    cum.back() = 1.0;
  }

  if (config.enforce_thickness) {
    for (const FilamentCurve& c : config.curves) {
      // Throws "thickness violated".
      SupportModel(c, config.noise.sigma);
    }
  }

  const NoiseSampler noise(config.noise);
  Rng rng(config.seed);
  LabeledSample out;
  out.seed = config.seed;
  out.points.reserve(config.n);
  out.labels.reserve(config.n);
  const BoundingBox& box = config.clutter_region;
  for (std::size_t i = 0; i < config.n; ++i) {
    if (config.eta >= 1.0 || (config.eta > 0.0 && rng.uniform() < config.eta)) {
      const double pick = rng.uniform();
      const auto j = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), pick) - cum.begin());
      const std::size_t curve = std::min(j, cum.size() - 1);
      const double u = config.h.draw(rng);
      out.points.push_back(config.curves[curve].eval(u) + noise.draw(rng));
      out.labels.push_back(static_cast<int>(curve));
    } else {
      out.points.push_back({rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y)});
      out.labels.push_back(kClutterLabel);
    }
  }
  return out;
}

LabeledSample sample_counts(const SamplerConfig& config, const std::vector<std::size_t>& per_curve,
                            std::size_t clutter) {
  config.noise.validate();
  config.h.validate();
  if (per_curve.size() != config.curves.size()) throw Error("one count per curve required");
  if (clutter > 0 && !(config.clutter_region.area() > 0.0)) throw Error("clutter region must have positive area");
  if (config.enforce_thickness) {
    for (const FilamentCurve& c : config.curves) SupportModel(c, config.noise.sigma);
  }
  const NoiseSampler noise(config.noise);
  Rng rng(config.seed);
  LabeledSample out;
  out.seed = config.seed;
  for (std::size_t j = 0; j < per_curve.size(); ++j) {
    for (std::size_t i = 0; i < per_curve[j]; ++i) {
      const double u = config.h.draw(rng);
      out.points.push_back(config.curves[j].eval(u) + noise.draw(rng));
      out.labels.push_back(static_cast<int>(j));
    }
  }
  const BoundingBox& box = config.clutter_region;
  for (std::size_t i = 0; i < clutter; ++i) {
    out.points.push_back({rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y)});
    out.labels.push_back(kClutterLabel);
  }
  return out;
}

}  // namespace filament
