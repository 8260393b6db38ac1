#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>
#include <vector>

#include "toralent/core.hpp"

namespace toralent {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense univariate polynomial with integer coefficients; coeffs[i] multiplies x^i.
/// Always normalized: no trailing zero coefficients (the zero polynomial is empty).
class IntPoly {
public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  static IntPoly from_ints(const std::vector<long long>& coeffs);
  static IntPoly monomial(const BigInt& c, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<BigInt>& coeffs() const { return c_; }
  const BigInt& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const BigInt& leading() const { return c_.back(); }

  /// Coefficients highest degree first, as in x^d + c_{d-1} x^{d-1} + ... .
  std::vector<BigInt> descending() const;

  IntPoly derivative() const;
  /// x^deg p(1/x).
  IntPoly reversed() const;
  BigInt content() const;
  /// Primitive part with positive leading coefficient.
  IntPoly primitive() const;
  bool is_reciprocal() const;

  BigInt eval(const BigInt& x) const;
  std::complex<long double> eval(std::complex<long double> z) const;

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  std::string to_string() const;

private:
  void normalize();
  std::vector<BigInt> c_;
};

/// Exact division a / b; returns false if b does not divide a over Z.
bool exact_divide(const IntPoly& a, const IntPoly& b, IntPoly& quotient);

/// Primitive gcd over Q (positive leading coefficient).
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

/// Yun's square-free decomposition: p = c * prod_k parts[k-1]^k with each part
/// square-free and pairwise coprime. Parts may be constant 1.
std::vector<IntPoly> squarefree_decomposition(const IntPoly& p);

/// m-th cyclotomic polynomial.
IntPoly cyclotomic(int m);

/// For a palindromic polynomial g of degree 2m, the degree-m polynomial q with
/// g(x) = x^m q(x + 1/x).
IntPoly trace_polynomial(const IntPoly& g);

/// Number of distinct real roots of a square-free p in the open interval (lo, hi),
/// neither endpoint being a root. Sturm sequences over Q.
int sturm_count(const IntPoly& p, const Rational& lo, const Rational& hi);

/// Exact number of roots of a square-free polynomial on the unit circle.
int unit_circle_root_count(const IntPoly& squarefree);

/// All complex roots of a square-free polynomial (Aberth-Ehrlich + Newton polish).
std::vector<std::complex<long double>> squarefree_roots(const IntPoly& p);

/// det(x I - A) by Faddeev-LeVerrier in checked 256-bit integers.
/// Throws ArithmeticOverflow on overflow, UnsupportedDimension for d > 8.
IntPoly characteristic_polynomial(const IntMat& a);

/// Companion matrix of a monic polynomial (last column holds -c_0 .. -c_{d-1}).
IntMat companion_matrix(const IntPoly& monic);

/// Determinant by fraction-free Bareiss elimination in checked integers.
BigInt integer_determinant(const IntMat& a);

}  // namespace toralent
