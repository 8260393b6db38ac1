#pragma once

#include <string>
#include <variant>
#include <vector>

#include "toralent/core.hpp"

namespace toralent {

/// s(u) = 1 for u <= 0, 0 for u >= 1, C-infinity in between, built from
/// psi(t) = exp(-1/t): s(u) = psi(1-u) / (psi(1-u) + psi(u)).
double smooth_step(double u);
double smooth_step_derivative(double u);
double smooth_step_derivative_sup();

struct BumpSpec {
  TorusPoint center;
  double radius = 0;
  double margin = 0;
};

/// One-dimensional bump on the circle for a single axis.
struct AxisBump {
  int axis = 0;
  double center = 0;
  double radius = 0;
  double margin = 0;
};

/// scale * base(x) + offset, where base is a Euclidean-ball bump, a product
/// of per-axis bumps, or absent (a constant observable).
class SmoothObservable {
public:
  static SmoothObservable constant(int dim, double c);

  int dimension() const { return dim_; }
  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  double sup_norm() const;
  /// sup |gradient| of the implemented profile (exact for ball bumps; for
  /// products, the bound sqrt(sum_i (sup|s'| / margin_i)^2)).
  double gradient_sup() const;
  /// "C^inf" for every implemented profile.
  std::string smoothness() const { return "C^inf"; }
  std::string kind() const;
  int order() const { return order_; }

  /// scale * this + offset.
  SmoothObservable affine(double scale, double offset) const;

  double scale() const { return scale_; }
  double offset() const { return offset_; }
  const std::variant<std::monostate, BumpSpec, std::vector<AxisBump>>& base() const { return base_; }

private:
  friend SmoothObservable bump_function(const TorusPoint&, double, double, int, double);
  friend SmoothObservable product_bump(int, std::vector<AxisBump>, int);

  int dim_ = 0;
  int order_ = 0;
  double scale_ = 1.0;
  double offset_ = 0.0;
  std::variant<std::monostate, BumpSpec, std::vector<AxisBump>> base_;
};

/// Equal to 1 on the Euclidean ball B(center, r) and 0 outside B(center, r + margin),
/// distances measured to the nearest lift. Requires 0 < r, margin < r0 and
/// r + margin < 1/2 (SupportWrapError otherwise). `order` is recorded only;
/// the profile is smooth of every order.
SmoothObservable bump_function(const TorusPoint& center, double r, double margin, int order = 1, double r0 = 0.25);

/// Product of one-dimensional bumps, one per listed axis (axes not listed are free).
SmoothObservable product_bump(int dim, std::vector<AxisBump> factors, int order = 1);

}  // namespace toralent
