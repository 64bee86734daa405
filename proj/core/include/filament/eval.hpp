#pragma once

// Evaluation: Hausdorff reports, rate fitting over replications, confusion
// matrices and multi-filament matching.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "filament/geom.hpp"
#include "filament/model.hpp"

namespace filament {

struct HausdorffReport {
  double hausdorff = 0.0;
  double truth_to_estimate = 0.0;
  double estimate_to_truth = 0.0;
};

/// The truth is sampled at `spacing`; distances to a point set are exact and
/// distances to the truth use exact projection.
HausdorffReport hausdorff_report(const FilamentCurve& truth, std::span<const Point2> estimate, double spacing);
/// Polylines are sampled at `spacing` as well.
HausdorffReport hausdorff_report(const FilamentCurve& truth, const Polyline& estimate, double spacing);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// OLS of log y on log(log n / n).
LogLogFit fit_loglog(std::span<const std::size_t> n, std::span<const double> y);

struct RateReport {
  std::vector<std::size_t> n_grid;
  std::vector<double> dh_values;  // median over successful replications
  std::vector<std::size_t> failures;
  std::size_t replications = 0;
  double fitted_slope = 0.0;
  double intercept = 0.0;
  double theoretical_slope = 0.0;
  /// Slope against log r_n, i.e. fitted / theoretical; 1 means the rate holds.
  double rate_ratio() const { return fitted_slope / theoretical_slope; }
  double alpha = 0.0;
};

struct RateExperiment {
  std::vector<std::size_t> n_grid;
  std::size_t replications = 20;
  std::uint64_t base_seed = 1;
  double alpha = 0.5;
  /// One replication: returns d_H for (n, seed); throwing counts as a failure.
  std::function<double(std::size_t n, std::uint64_t seed)> run;
};

/// Seed of replicate r at grid index i.
std::uint64_t replication_seed(std::uint64_t base, std::size_t grid_index, std::size_t replicate);

/// Runs every (n, replicate) pair, in parallel, and fits the slope. Throws
/// when more than 20% of the replications fail at some n.
RateReport fit_rate(const RateExperiment& experiment);

struct ConfusionMatrix {
  std::size_t tp = 0;  // filament predicted filament
  std::size_t fn = 0;  // filament predicted clutter
  std::size_t fp = 0;  // clutter predicted filament
  std::size_t tn = 0;  // clutter predicted clutter

  double filament_recall() const;
  double clutter_recall() const;
};

/// Truth labels < 0 mark clutter.
ConfusionMatrix confusion(std::span<const int> truth, const std::vector<bool>& predicted_filament);

struct MultiFilamentReport {
  std::vector<int> match;            // estimate k -> truth index, -1 if unmatched
  std::vector<double> hausdorff;     // per estimate, to its matched truth
  double max_hausdorff = 0.0;
  bool count_mismatch = false;
  bool degenerate = false;           // two truths coincide
  double separated_to_estimate = 0.0;  // directed: well-separated part -> estimates
  double estimate_to_truth = 0.0;      // directed: estimates -> union of truths
};

/// Greedy matching by d_H; the well-separated part keeps truth samples (1000
/// per curve) whose 2 sigma ball misses every other curve.
MultiFilamentReport multi_filament_eval(const std::vector<FilamentCurve>& truths,
                                        const std::vector<std::vector<Point2>>& estimates, double sigma,
                                        double spacing);

}  // namespace filament
