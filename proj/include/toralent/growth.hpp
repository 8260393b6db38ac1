#pragma once

#include <string>
#include <vector>

namespace toralent {

struct CurvePoint {
  double n = 0;      // abscissa: iterate count, or log n for log-log profiles
  double value = 0;  // log of the counted or measured quantity
};

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double residual_rms = 0;
  double n_min = 0;
  double n_max = 0;
  int points_used = 0;
};

/// (n, log quantity) samples with a least-squares line over a window.
struct GrowthCurve {
  std::vector<CurvePoint> points;
  LinearFit fit;

  void add(double n, double value);
  /// Refits over points with n in [n_min, n_max]. Needs at least two points
  /// in the window; throws ContractViolation otherwise.
  void refit(double n_min, double n_max);
  /// Refits over every point.
  void refit();
};

LinearFit least_squares(const std::vector<CurvePoint>& pts, double n_min, double n_max);

struct EpsilonCurve {
  double eps = 0;
  GrowthCurve curve;
};

struct EntropyEstimate {
  double value = 0;
  bool non_converged = false;
  /// Ladder rung whose slope was reported; -1 when none qualified.
  int plateau_index = -1;
  /// Per-rung curves, ordered by decreasing eps.
  std::vector<EpsilonCurve> curves;
  /// max slope - min slope over the ladder.
  double slope_spread = 0;
};

/// Plateau rule over curves ordered by decreasing eps: report the slope of
/// the smallest eps whose slope agrees with the next smaller rung to within
/// `plateau_tol`. With no agreeing pair the last rung's slope is reported and
/// the estimate is flagged non-converged. Negative slopes are clamped to 0.
EntropyEstimate plateau_estimate(std::vector<EpsilonCurve> curves, double plateau_tol);

}  // namespace toralent
