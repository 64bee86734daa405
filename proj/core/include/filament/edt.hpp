#pragma once

// Empirical distance transform of S^ and the EDT estimator
// Gamma^ = {y in S^ : d(y, boundary of S^) >= sigma^ - delta}.

#include <memory>
#include <span>
#include <vector>

#include "filament/geom.hpp"
#include "filament/model.hpp"
#include "filament/support.hpp"

namespace filament {

struct SigmaEstimate {
  double sigma_hat = 0.0;
  Point2 y_hat;
};

/// Maximizes the empirical EDT over S^ by multi-start pattern search
/// (16 directions, step eps/2 down to 1e-6). Starts are the data points and a
/// grid of spacing eps; only the 64 best starts within eps of the best start
/// value are refined.
SigmaEstimate estimate_sigma(const SupportEstimate& support);

class EdtEstimate {
 public:
  EdtEstimate(std::shared_ptr<const SupportEstimate> support, SigmaEstimate sigma, double delta,
              double grid_step, std::vector<Point2> region_points);

  double sigma_hat() const { return sigma_.sigma_hat; }
  Point2 y_hat() const { return sigma_.y_hat; }
  double delta() const { return delta_; }
  double epsilon() const { return support_->epsilon(); }
  double grid_step() const { return grid_step_; }
  double threshold() const { return sigma_.sigma_hat - delta_; }
  const std::vector<Point2>& region_points() const { return region_points_; }
  const SupportEstimate& support() const { return *support_; }
  std::shared_ptr<const SupportEstimate> support_ptr() const { return support_; }

  /// Exact membership test y in Gamma^.
  bool contains(Point2 y) const;

 private:
  std::shared_ptr<const SupportEstimate> support_;
  SigmaEstimate sigma_;
  double delta_;
  double grid_step_;
  std::vector<Point2> region_points_;
};

struct EdtOptions {
  double delta = -1.0;      // negative: 2 eps
  double grid_step = -1.0;  // negative: eps / 4
};

/// Estimates sigma^ and materializes Gamma^ on a grid over the bounding box
/// of S^ (row-major, bottom to top). Throws "empty EDT region".
EdtEstimate edt_region(std::shared_ptr<const SupportEstimate> support, const EdtOptions& options = {});
EdtEstimate edt_region(std::shared_ptr<const SupportEstimate> support, const SigmaEstimate& sigma,
                       double delta, double grid_step);

struct EdtCheck {
  double max_violation = 0.0;       // max |Lambda^(y) - Lambda(y)| over probes
  double boundary_hausdorff = 0.0;  // measured d_H(boundary S, boundary S^)
};

/// Compares the empirical EDT with the true one at `probes`.
EdtCheck edt_lipschitz_check(const SupportModel& truth, const SupportEstimate& support,
                             std::span<const Point2> probes, double spacing);

}  // namespace filament
