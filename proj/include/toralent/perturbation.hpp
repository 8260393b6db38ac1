#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toralent/core.hpp"
#include "toralent/growth.hpp"
#include "toralent/linear.hpp"

namespace toralent {

/// rho(s) = exp(-1 / (1 - s^2)) for |s| < 1, else 0.
double mollifier(double s);
double mollifier_derivative(double s);
/// max_s |rho'(s)|, computed once numerically.
double mollifier_derivative_sup();

struct Bump {
  TorusPoint center;
  double radius = 0;
  Vec direction;  // unit vector
};

/// Vector field sum_i rho(|x - c_i| / r_i) v_i, where |x - c_i| is the
/// Euclidean length of the shortest lifted difference. Supports must be
/// pairwise disjoint and each radius below 1/2, so the field is smooth.
class BumpField {
public:
  BumpField() = default;
  BumpField(int dim, std::vector<Bump> bumps);

  int dimension() const { return dim_; }
  const std::vector<Bump>& bumps() const { return bumps_; }
  bool empty() const { return bumps_.empty(); }

  Vec value(const Vec& x) const;
  Mat jacobian(const Vec& x) const;

  /// sup |field| (attained at a center).
  double sup_norm() const;
  /// sup ||D field|| = max_i sup|rho'| / r_i.
  double sup_jacobian_norm() const;

private:
  int dim_ = 0;
  std::vector<Bump> bumps_;
};

/// f_t(x) = A x + t field(x) (mod 1).
class PerturbedMap final : public TorusMap {
public:
  /// Throws ContractViolation unless t >= 0 and t sup||Dfield|| < 1/||A^-1||.
  PerturbedMap(const IntegerAutomorphism& base, BumpField field, double t);

  int dimension() const override { return base_.dimension(); }
  Vec lift(const Vec& x) const override;
  using TorusMap::jacobian;
  Mat jacobian(const Vec& x) const override;
  const IntMat& homotopy_class() const override { return base_.entries(); }
  /// Newton iteration on the lift from A^-1 y; tolerance 1e-12, 50 iterations.
  Vec inverse(const Vec& y) const override;

  const IntegerAutomorphism& base() const { return base_; }
  const BumpField& field() const { return field_; }
  double amplitude() const { return t_; }
  /// t (sup|field| + sup||Dfield||).
  double c1_upper_bound() const;

  /// Largest amplitude allowed by the invertibility check for this field.
  static double invertibility_bound(const IntegerAutomorphism& base, const BumpField& field);

private:
  IntegerAutomorphism base_;
  BumpField field_;
  double t_ = 0;
  Mat a_;
  Mat a_inv_;
};

/// max over samples of torus_distance(f x, g x) plus max over samples of
/// ||Df(x) - Dg(x)||, on Halton points drawn from `seed`. A lower bound on
/// the C^1 distance.
double c1_distance_estimate(const TorusMap& f, const TorusMap& g, std::size_t sample_count, std::uint64_t seed = 0);

/// normalize(D_{f^-n x} f^n v0) with v0 the unstable eigenvector of the
/// homotopy class, oriented to have positive inner product with v0.
Vec unstable_direction(const TorusMap& map, const TorusPoint& x, int n_power);
Vec unstable_direction(const TorusMap& map, const TorusPoint& x, int n_power, const Vec& v0);

/// Unit-speed seed segment through f^-m x along the estimated unstable
/// direction, grown m steps and restricted to arclength [-delta, delta] around x.
/// For linear maps this is the exact leaf segment.
LeafPolyline unstable_leaf(const TorusMap& map, const TorusPoint& x, double delta, double eps_geom,
                           int pullback_steps = 12, int direction_power = 30);

enum class CenterVerdict { no_center, bounded, subexponential_polynomial_fit, exponential };
std::string to_string(CenterVerdict v);

struct CenterGrowthOptions {
  /// Bounded threshold; <= 0 selects 10x the sup of the base center norm.
  double bound_k = 0;
  /// Fitted exponential rates at or below this count as subexponential.
  double rate_tol = 0.05;
  /// Bounded also requires sup over the second half of the horizon to stay
  /// within this factor of the sup over the first half.
  double half_ratio = 1.25;
  std::uint64_t seed = 0;
};

struct CenterGrowth {
  CenterVerdict verdict = CenterVerdict::no_center;
  /// (n, log g_n), n = 1..N.
  GrowthCurve curve;
  double bound_k = 0;
  double sup_first_half = 0;
  double sup_second_half = 0;
  /// Fitted constants with g_n <= C e^{n eps} on the horizon.
  double fitted_c = 1;
  double fitted_eps = 0;
  /// The base splitting stands in for the perturbed center bundle.
  bool frame_proxy = false;
};

/// g_n = max over samples of ||(P_c Df(f^{n-1} x)) ... (P_c Df(x)) B_c||, with
/// P_c, B_c the base center projection and orthonormal basis. For linear maps
/// this is ||A^n|E^c||.
CenterGrowth center_growth_profile(const TorusMap& map, const SpectralSplitting& base, int horizon,
                                   std::size_t sample_count, const CenterGrowthOptions& opts = {});

}  // namespace toralent
