#include "toralent/observable.hpp"

#include <algorithm>
#include <cmath>

namespace toralent {

namespace {

double psi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double dpsi(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

double circle_offset(double a, double c) {
  double t = a - c;
  return t - std::round(t);
}

void check_radii(double r, double margin, double r0) {
  if (!(r > 0.0) || !(margin > 0.0)) throw ContractViolation("bump: radius and margin must be positive");
  if (r + margin >= 0.5) throw SupportWrapError("bump: r + margin must be below 1/2 so the support does not wrap");
  if (!(r < r0) || !(margin < r0)) throw ContractViolation("bump: radius and margin must be below r0");
}

}  // namespace

double smooth_step(double u) {
  if (u <= 0.0) return 1.0;
  if (u >= 1.0) return 0.0;
  const double a = psi(1.0 - u), b = psi(u);
  return a / (a + b);
}

double smooth_step_derivative(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double a = psi(1.0 - u), b = psi(u);
  const double da = -dpsi(1.0 - u), db = dpsi(u);
  return (da * b - a * db) / ((a + b) * (a + b));
}

double smooth_step_derivative_sup() {
  static const double sup = [] {
    double best = 0.0;
    for (int i = 1; i < 20000; ++i) best = std::max(best, std::abs(smooth_step_derivative(i / 20000.0)));
    // the maximum sits at u = 1/2 by symmetry
    return std::max(best, std::abs(smooth_step_derivative(0.5)));
  }();
  return sup;
}

SmoothObservable SmoothObservable::constant(int dim, double c) {
  if (dim < 1) throw ContractViolation("constant observable: dimension must be positive");
  SmoothObservable o;
  o.dim_ = dim;
  o.scale_ = 0.0;
  o.offset_ = c;
  return o;
}

SmoothObservable bump_function(const TorusPoint& center, double r, double margin, int order, double r0) {
  check_radii(r, margin, r0);
  if (order < 0) throw ContractViolation("bump_function: order must be >= 0");
  SmoothObservable o;
  o.dim_ = center.dimension();
  o.order_ = order;
  o.base_ = BumpSpec{center, r, margin};
  return o;
}

SmoothObservable product_bump(int dim, std::vector<AxisBump> factors, int order) {
  if (dim < 1) throw ContractViolation("product_bump: dimension must be positive");
  if (factors.empty()) throw ContractViolation("product_bump: no factors");
  for (auto& f : factors) {
    if (f.axis < 0 || f.axis >= dim) throw ContractViolation("product_bump: axis out of range");
    check_radii(f.radius, f.margin, 0.5);
    f.center = wrap_unit(f.center);
  }
  SmoothObservable o;
  o.dim_ = dim;
  o.order_ = order;
  o.base_ = std::move(factors);
  return o;
}

double SmoothObservable::value(const Vec& x) const {
  double base = 0.0;
  if (const auto* b = std::get_if<BumpSpec>(&base_)) {
    const double dist = torus_difference(x, b->center.coords()).norm();
    base = smooth_step((dist - b->radius) / b->margin);
  } else if (const auto* fs = std::get_if<std::vector<AxisBump>>(&base_)) {
    base = 1.0;
    for (const auto& f : *fs) {
      base *= smooth_step((std::abs(circle_offset(x[f.axis], f.center)) - f.radius) / f.margin);
      if (base == 0.0) break;
    }
  }
  return scale_ * base + offset_;
}

Vec SmoothObservable::gradient(const Vec& x) const {
  Vec g = Vec::Zero(dim_);
  if (scale_ == 0.0) return g;
  if (const auto* b = std::get_if<BumpSpec>(&base_)) {
    const Vec delta = torus_difference(x, b->center.coords());
    const double dist = delta.norm();
    if (dist > 0.0) g = (smooth_step_derivative((dist - b->radius) / b->margin) / (b->margin * dist)) * delta;
  } else if (const auto* fs = std::get_if<std::vector<AxisBump>>(&base_)) {
    std::vector<double> vals, ders;
    for (const auto& f : *fs) {
      const double t = circle_offset(x[f.axis], f.center);
      const double u = (std::abs(t) - f.radius) / f.margin;
      vals.push_back(smooth_step(u));
      ders.push_back(t == 0.0 ? 0.0 : smooth_step_derivative(u) / f.margin * (t > 0 ? 1.0 : -1.0));
    }
    for (std::size_t i = 0; i < fs->size(); ++i) {
      double p = ders[i];
      for (std::size_t j = 0; j < fs->size(); ++j)
        if (j != i) p *= vals[j];
      g[(*fs)[i].axis] += p;
    }
  }
  return scale_ * g;
}

double SmoothObservable::sup_norm() const {
  if (std::holds_alternative<std::monostate>(base_)) return std::abs(offset_);
  // base ranges over [0, 1]
  return std::max(std::abs(offset_), std::abs(scale_ + offset_));
}

double SmoothObservable::gradient_sup() const {
  const double m = smooth_step_derivative_sup();
  if (const auto* b = std::get_if<BumpSpec>(&base_)) return std::abs(scale_) * m / b->margin;
  if (const auto* fs = std::get_if<std::vector<AxisBump>>(&base_)) {
    double s = 0.0;
    for (const auto& f : *fs) s += (m / f.margin) * (m / f.margin);
    return std::abs(scale_) * std::sqrt(s);
  }
  return 0.0;
}

std::string SmoothObservable::kind() const {
  if (std::holds_alternative<BumpSpec>(base_)) return "bump";
  if (std::holds_alternative<std::vector<AxisBump>>(base_)) return "product";
  return "constant";
}

SmoothObservable SmoothObservable::affine(double scale, double offset) const {
  SmoothObservable o = *this;
  o.scale_ = scale * scale_;
  o.offset_ = scale * offset_ + offset;
  return o;
}

}  // namespace toralent
