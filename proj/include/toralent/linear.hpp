#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "toralent/core.hpp"
#include "toralent/leaf.hpp"
#include "toralent/polynomial.hpp"

namespace toralent {

/// Integer matrix with |det| = 1, 1 <= d <= 8.
class IntegerAutomorphism {
public:
  explicit IntegerAutomorphism(IntMat entries);

  /// One row per line, whitespace-separated integers. Blank lines and '#' comments ignored.
  static IntegerAutomorphism parse(std::string_view text);
  static IntegerAutomorphism from_rows(const std::vector<std::vector<std::int64_t>>& rows);
  static IntegerAutomorphism identity(int d);

  int dimension() const { return static_cast<int>(entries_.rows()); }
  const IntMat& entries() const { return entries_; }
  std::int64_t determinant() const { return det_; }

  IntegerAutomorphism power(int k) const;
  IntegerAutomorphism inverse() const;
  LinearTorusMap as_map() const { return LinearTorusMap(entries_); }
  std::string to_string() const;

  friend bool operator==(const IntegerAutomorphism& a, const IntegerAutomorphism& b) { return a.entries_ == b.entries_; }

private:
  IntMat entries_;
  std::int64_t det_ = 1;
};

/// The standard example [[2,1],[1,1]].
IntegerAutomorphism cat_map();

enum class Stability { unstable, center, stable };

struct Eigenvalue {
  std::complex<double> value;
  long double modulus = 0;
  int multiplicity = 1;
  Stability kind = Stability::center;
};

/// Real invariant splitting R^d = E^u + E^c + E^s of an integer matrix.
/// Bases are orthonormal; each E^sigma is the kernel of the real factor of
/// the characteristic polynomial collecting the sigma-roots, so generalized
/// eigenvectors are included.
struct SpectralSplitting {
  IntPoly charpoly;
  std::vector<Eigenvalue> eigenvalues;
  Mat basis_u, basis_c, basis_s;
  Mat proj_u, proj_c, proj_s;
  double tol = 1e-9;

  int dimension() const { return static_cast<int>(proj_u.rows()); }
  int dim_u() const { return static_cast<int>(basis_u.cols()); }
  int dim_c() const { return static_cast<int>(basis_c.cols()); }
  int dim_s() const { return static_cast<int>(basis_s.cols()); }
  /// Unit vector spanning E^u when dim_u() == 1, sign chosen so its largest
  /// component is positive.
  Vec unstable_vector() const;
};

IntPoly characteristic_polynomial(const IntegerAutomorphism& a);

/// Eigenvalues from the exact characteristic polynomial, classified by
/// |lambda| against 1 +- tol and cross-checked against an exact count of
/// unit-circle roots for every square-free part. Throws ClassificationAmbiguity
/// when the two disagree.
SpectralSplitting spectral_split(const IntegerAutomorphism& a, double tol = 1e-9);

enum class SpectralClass { hyperbolic, partially_hyperbolic, quasiunipotent };
std::string to_string(SpectralClass c);

struct Classification {
  SpectralClass kind = SpectralClass::hyperbolic;
  bool ergodic = false;
  int dim_u = 0, dim_c = 0, dim_s = 0;
  /// Orders m with Phi_m dividing the characteristic polynomial.
  std::vector<int> cyclotomic_orders;
};

Classification classify(const IntegerAutomorphism& a);
Classification classify(const IntegerAutomorphism& a, const SpectralSplitting& split);

/// Orders m <= 2 d^2 with phi(m) <= d and Phi_m | p.
std::vector<int> cyclotomic_divisors(const IntPoly& p);

/// Sum of log|lambda| over expanding eigenvalues with multiplicity.
double exact_entropy(const IntegerAutomorphism& a);
double exact_entropy(const SpectralSplitting& split);

/// Flat piece of a 2-dimensional unstable leaf: {x + a e1 + b e2 : |a|,|b| < delta}.
struct LeafPatch {
  TorusPoint origin;
  Mat basis;  // d x 2, orthonormal
  double delta = 0;

  /// Wrapped samples on a square grid with spacing at most `spacing`.
  std::vector<TorusPoint> samples(double spacing) const;
};

using UnstableLeaf = std::variant<LeafPolyline, LeafPatch>;

/// x + t u (mod 1), |t| < delta. Polyline for dim E^u = 1, patch for dim E^u = 2.
/// Throws NoUnstableDirection for dim E^u = 0, UnsupportedDimension above 2.
UnstableLeaf linear_unstable_leaf(const IntegerAutomorphism& a, const TorusPoint& x, double delta,
                                  double spacing = 0.01);
/// Polyline form; requires dim E^u = 1.
LeafPolyline linear_unstable_polyline(const IntegerAutomorphism& a, const TorusPoint& x, double delta,
                                      double spacing = 0.01);

}  // namespace toralent
