#include "toralent/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "toralent/sampling.hpp"

namespace toralent {

double mollifier(double s) {
  const double q = 1.0 - s * s;
  return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}

double mollifier_derivative(double s) {
  const double q = 1.0 - s * s;
  return q > 0.0 ? std::exp(-1.0 / q) * (-2.0 * s / (q * q)) : 0.0;
}

double mollifier_derivative_sup() {
  static const double sup = [] {
    auto g = [](double s) { return std::abs(mollifier_derivative(s)); };
    double best = 0.0, arg = 0.0;
    for (int i = 1; i < 1000; ++i) {
      const double s = i / 1000.0;
      if (g(s) > best) best = g(s), arg = s;
    }
    // golden section on the bracketing cell
    double a = arg - 1e-3, b = arg + 1e-3;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 100; ++it) {
      const double c = b - phi * (b - a), d = a + phi * (b - a);
      if (g(c) > g(d)) b = d; else a = c;
    }
    return g(0.5 * (a + b));
  }();
  return sup;
}

BumpField::BumpField(int dim, std::vector<Bump> bumps) : dim_(dim), bumps_(std::move(bumps)) {
  if (dim < 1) throw ContractViolation("BumpField: dimension must be positive");
  for (auto& b : bumps_) {
    require_same_dimension(dim, b.center.dimension(), "BumpField center");
    require_same_dimension(dim, static_cast<int>(b.direction.size()), "BumpField direction");
    if (!(b.radius > 0.0 && b.radius < 0.5)) throw ContractViolation("BumpField: radius must lie in (0, 1/2)");
    const double n = b.direction.norm();
    if (!(n > 0.0)) throw ContractViolation("BumpField: zero direction");
    b.direction /= n;
  }
  for (std::size_t i = 0; i < bumps_.size(); ++i)
    for (std::size_t j = i + 1; j < bumps_.size(); ++j) {
      const double sep = torus_difference(bumps_[i].center.coords(), bumps_[j].center.coords()).norm();
      if (sep < bumps_[i].radius + bumps_[j].radius) throw ContractViolation("BumpField: supports overlap");
    }
}

Vec BumpField::value(const Vec& x) const {
  Vec out = Vec::Zero(dim_);
  for (const auto& b : bumps_) {
    const double n = torus_difference(x, b.center.coords()).norm();
    if (n < b.radius) out += mollifier(n / b.radius) * b.direction;
  }
  return out;
}

Mat BumpField::jacobian(const Vec& x) const {
  Mat out = Mat::Zero(dim_, dim_);
  for (const auto& b : bumps_) {
    const Vec delta = torus_difference(x, b.center.coords());
    const double n = delta.norm();
    if (n < b.radius && n > 0.0) out += b.direction * ((mollifier_derivative(n / b.radius) / (b.radius * n)) * delta).transpose();
  }
  return out;
}

double BumpField::sup_norm() const { return bumps_.empty() ? 0.0 : mollifier(0.0); }

double BumpField::sup_jacobian_norm() const {
  double r_min = 1.0;
  for (const auto& b : bumps_) r_min = std::min(r_min, b.radius);
  return bumps_.empty() ? 0.0 : mollifier_derivative_sup() / r_min;
}

double PerturbedMap::invertibility_bound(const IntegerAutomorphism& base, const BumpField& field) {
  const double s = field.sup_jacobian_norm();
  const Mat inv = base.entries().cast<double>().inverse();
  return s > 0.0 ? 1.0 / (operator_norm(inv) * s) : std::numeric_limits<double>::infinity();
}

PerturbedMap::PerturbedMap(const IntegerAutomorphism& base, BumpField field, double t)
    : base_(base), field_(std::move(field)), t_(t) {
  if (!field_.empty()) require_same_dimension(base_.dimension(), field_.dimension(), "PerturbedMap");
  if (!(t >= 0.0)) throw ContractViolation("PerturbedMap: amplitude must be non-negative");
  a_ = base_.entries().cast<double>();
  a_inv_ = a_.inverse();
  if (t > 0.0 && !(t < invertibility_bound(base_, field_)))
    throw ContractViolation("PerturbedMap: amplitude exceeds the invertibility bound");
}

Vec PerturbedMap::lift(const Vec& x) const {
  if (t_ == 0.0 || field_.empty()) return a_ * x;
  return a_ * x + t_ * field_.value(x);
}

Mat PerturbedMap::jacobian(const Vec& x) const {
  if (t_ == 0.0 || field_.empty()) return a_;
  return a_ + t_ * field_.jacobian(x);
}

Vec PerturbedMap::inverse(const Vec& y) const {
  Vec x = a_inv_ * y;
  if (t_ == 0.0 || field_.empty()) return x;
  for (int it = 0; it < 50; ++it) {
    const Vec r = lift(x) - y;
    const Vec dx = jacobian(x).partialPivLu().solve(r);
    x -= dx;
    if (dx.lpNorm<Eigen::Infinity>() < 1e-12) return x;
  }
  throw InversionError("PerturbedMap::inverse: Newton iteration did not converge in 50 steps");
}

double PerturbedMap::c1_upper_bound() const { return t_ * (field_.sup_norm() + field_.sup_jacobian_norm()); }

double c1_distance_estimate(const TorusMap& f, const TorusMap& g, std::size_t sample_count, std::uint64_t seed) {
  require_same_dimension(f.dimension(), g.dimension(), "c1_distance_estimate");
  if (sample_count < 1) throw ContractViolation("c1_distance_estimate: sample_count must be >= 1");
  const auto pts = halton_points(f.dimension(), sample_count, seed);
  double c0 = 0.0, c1 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const TorusPoint x = pts.at(i);
    c0 = std::max(c0, torus_distance(f.apply(x), g.apply(x)));
    c1 = std::max(c1, operator_norm(f.jacobian(x) - g.jacobian(x)));
  }
  return c0 + c1;
}

Vec unstable_direction(const TorusMap& map, const TorusPoint& x, int n_power) {
  const IntegerAutomorphism a(map.homotopy_class());
  const auto split = spectral_split(a);
  if (split.dim_u() != 1) throw NoUnstableDirection("unstable_direction: base unstable space must be one-dimensional");
  return unstable_direction(map, x, n_power, split.unstable_vector());
}

Vec unstable_direction(const TorusMap& map, const TorusPoint& x, int n_power, const Vec& v0) {
  if (n_power < 1) throw ContractViolation("unstable_direction: n_power must be >= 1");
  require_same_dimension(map.dimension(), static_cast<int>(v0.size()), "unstable_direction");
  std::vector<TorusPoint> back{x};
  for (int i = 0; i < n_power; ++i) back.push_back(map.apply_inverse(back.back()));
  Vec v = v0.normalized();
  for (int i = n_power; i >= 1; --i) v = (map.jacobian(back[static_cast<std::size_t>(i)]) * v).normalized();
  if (v.dot(v0) < 0.0) v = -v;
  return v;
}

LeafPolyline unstable_leaf(const TorusMap& map, const TorusPoint& x, double delta, double eps_geom, int pullback_steps,
                           int direction_power) {
  if (!(delta > 0.0)) throw ContractViolation("unstable_leaf: delta must be positive");
  if (pullback_steps < 0) throw ContractViolation("unstable_leaf: pullback_steps must be >= 0");
  TorusPoint y = x;
  for (int i = 0; i < pullback_steps; ++i) y = map.apply_inverse(y);
  const Vec u = unstable_direction(map, y, direction_power);
  // local stretch of f^m along u at y sizes the seed so the image covers +-2 delta
  double stretch = 1.0;
  if (pullback_steps > 0) stretch = (jacobian_cocycle(map, y, pullback_steps) * u).norm();
  const double a = 2.0 * delta / stretch;
  auto seed = LeafPolyline::segment(y, u, -a, a, std::min(eps_geom, a / 4.0));
  auto grown = grow_leaf(map, seed, pullback_steps, eps_geom);
  const double base = grown.arclength(grown.basepoint_index());
  if (base < delta || grown.length() - base < delta)
    throw ContractViolation("unstable_leaf: grown segment too short; increase pullback accuracy");
  double s_lo = 0, s_hi = 0;
  grown.lifted_at_arclength(base - delta, &s_lo);
  grown.lifted_at_arclength(base + delta, &s_hi);
  return grown.restricted(map, std::min(s_lo, 0.0), std::max(s_hi, 0.0));
}

std::string to_string(CenterVerdict v) {
  switch (v) {
    case CenterVerdict::no_center: return "no_center";
    case CenterVerdict::bounded: return "bounded";
    case CenterVerdict::subexponential_polynomial_fit: return "subexponential_polynomial_fit";
    case CenterVerdict::exponential: return "exponential";
  }
  return "unknown";
}

CenterGrowth center_growth_profile(const TorusMap& map, const SpectralSplitting& base, int horizon,
                                   std::size_t sample_count, const CenterGrowthOptions& opts) {
  require_same_dimension(map.dimension(), base.dimension(), "center_growth_profile");
  if (horizon < 2) throw ContractViolation("center_growth_profile: horizon must be >= 2");
  if (sample_count < 1) throw ContractViolation("center_growth_profile: sample_count must be >= 1");
  CenterGrowth out;
  out.frame_proxy = dynamic_cast<const LinearTorusMap*>(&map) == nullptr;
  if (base.dim_c() == 0) return out;

  const int d = map.dimension();
  const Mat& pc = base.proj_c;
  const Mat& bc = base.basis_c;
  const auto n = static_cast<std::size_t>(horizon);

  double k = opts.bound_k;
  if (k <= 0.0) {
    const Mat a = map.homotopy_class().cast<double>();
    Mat w = bc;
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w = pc * (a * w);
      sup = std::max(sup, operator_norm(w));
    }
    k = 10.0 * sup;
  }
  out.bound_k = k;

  std::vector<double> g(n, 0.0);
  const auto pts = halton_points(d, sample_count, opts.seed);
  for (std::size_t s = 0; s < pts.size(); ++s) {
    TorusPoint x = pts.at(s);
    // the frame is projected back after every step, so roundoff leaking into
    // E^u is not amplified by the unstable eigenvalue
    Mat w = bc;
    for (std::size_t i = 0; i < n; ++i) {
      w = pc * (map.jacobian(x) * w);
      x = map.apply(x);
      g[i] = std::max(g[i], operator_norm(w));
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.curve.add(static_cast<double>(i + 1), std::log(g[i]));
  out.curve.refit();

  const std::size_t half = n / 2;
  out.sup_first_half = *std::max_element(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(half));
  out.sup_second_half = *std::max_element(g.begin() + static_cast<std::ptrdiff_t>(half), g.end());
  const double sup = std::max(out.sup_first_half, out.sup_second_half);

  out.fitted_eps = std::max(0.0, out.curve.fit.slope);
  double c = 1.0;
  for (std::size_t i = 0; i < n; ++i) c = std::max(c, g[i] * std::exp(-out.fitted_eps * static_cast<double>(i + 1)));
  out.fitted_c = c;

  if (sup < k && out.sup_second_half <= opts.half_ratio * out.sup_first_half)
    out.verdict = CenterVerdict::bounded;
  else if (out.curve.fit.slope <= opts.rate_tol)
    out.verdict = CenterVerdict::subexponential_polynomial_fit;
  else
    out.verdict = CenterVerdict::exponential;
  return out;
}

}  // namespace toralent
