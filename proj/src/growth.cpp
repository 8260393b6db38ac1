#include "toralent/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "toralent/errors.hpp"

namespace toralent {

void GrowthCurve::add(double n, double value) {
  if (!points.empty() && !(n > points.back().n))
    throw ContractViolation("GrowthCurve: abscissae must be strictly increasing");
  points.push_back({n, value});
}

void GrowthCurve::refit(double n_min, double n_max) { fit = least_squares(points, n_min, n_max); }

void GrowthCurve::refit() {
  if (points.empty()) throw ContractViolation("GrowthCurve: no points");
  refit(points.front().n, points.back().n);
}

LinearFit least_squares(const std::vector<CurvePoint>& pts, double n_min, double n_max) {
  double sx = 0, sy = 0;
  int m = 0;
  for (const auto& p : pts) {
    if (p.n < n_min || p.n > n_max) continue;
    if (!std::isfinite(p.value)) throw ContractViolation("least_squares: non-finite value in fit window");
    sx += p.n;
    sy += p.value;
    ++m;
  }
  if (m < 2) throw ContractViolation("least_squares: fewer than two points in the fit window");
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (const auto& p : pts) {
    if (p.n < n_min || p.n > n_max) continue;
    sxx += (p.n - mx) * (p.n - mx);
    sxy += (p.n - mx) * (p.value - my);
  }
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (const auto& p : pts) {
    if (p.n < n_min || p.n > n_max) continue;
    const double r = p.value - (f.intercept + f.slope * p.n);
    ss += r * r;
  }
  f.residual_rms = std::sqrt(ss / m);
  f.n_min = n_min;
  f.n_max = n_max;
  f.points_used = m;
  return f;
}

EntropyEstimate plateau_estimate(std::vector<EpsilonCurve> curves, double plateau_tol) {
  if (curves.empty()) throw ContractViolation("plateau_estimate: empty ladder");
  std::sort(curves.begin(), curves.end(), [](const auto& a, const auto& b) { return a.eps > b.eps; });
  EntropyEstimate est;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& c : curves) {
    lo = std::min(lo, c.curve.fit.slope);
    hi = std::max(hi, c.curve.fit.slope);
  }
  est.slope_spread = hi - lo;
  const int m = static_cast<int>(curves.size());
  for (int i = m - 2; i >= 0; --i) {
    if (std::abs(curves[i].curve.fit.slope - curves[i + 1].curve.fit.slope) <= plateau_tol) {
      est.plateau_index = i;
      break;
    }
  }
  if (est.plateau_index < 0) {
    est.non_converged = true;
    est.value = curves.back().curve.fit.slope;
  } else {
    est.value = curves[est.plateau_index].curve.fit.slope;
  }
  est.value = std::max(0.0, est.value);
  est.curves = std::move(curves);
  return est;
}

}  // namespace toralent
