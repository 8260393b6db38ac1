#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

#include "toralent/errors.hpp"

namespace toralent {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IntMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Reduces x to its representative in [0,1).
double wrap_unit(double x);

/// A point of T^d stored by its canonical coordinates in [0,1)^d.
class TorusPoint {
public:
  TorusPoint() = default;
  explicit TorusPoint(const Vec& coords);
  TorusPoint(std::initializer_list<double> coords);

  int dimension() const { return static_cast<int>(coords_.size()); }
  const Vec& coords() const { return coords_; }
  double operator[](int i) const { return coords_[i]; }

  /// The point x + v (mod 1).
  TorusPoint translated(const Vec& v) const;

  friend bool operator==(const TorusPoint& a, const TorusPoint& b) { return a.coords_ == b.coords_; }

private:
  Vec coords_;
};

/// A map of T^d with a distinguished lift F: R^d -> R^d and its derivative.
///
/// The lift satisfies F(x + k) = F(x) + L k for integer k, where L is the
/// integer matrix returned by homotopy_class(). Implementations are
/// immutable after construction and safe to share across threads.
class TorusMap {
public:
  virtual ~TorusMap() = default;

  virtual int dimension() const = 0;
  /// F(x) for a canonical representative x in [0,1)^d.
  virtual Vec lift(const Vec& x) const = 0;
  virtual Mat jacobian(const Vec& x) const = 0;
  virtual const IntMat& homotopy_class() const = 0;
  /// Preimage under the map; default throws InversionError.
  virtual Vec inverse(const Vec& x) const;

  TorusPoint apply(const TorusPoint& x) const;
  Mat jacobian(const TorusPoint& x) const { return jacobian(x.coords()); }
  TorusPoint apply_inverse(const TorusPoint& x) const;
};

/// x -> A x (mod 1) for an integer matrix A.
class LinearTorusMap final : public TorusMap {
public:
  explicit LinearTorusMap(IntMat a);

  int dimension() const override { return static_cast<int>(a_.rows()); }
  Vec lift(const Vec& x) const override { return af_ * x; }
  using TorusMap::jacobian;
  Mat jacobian(const Vec&) const override { return af_; }
  const IntMat& homotopy_class() const override { return a_; }
  Vec inverse(const Vec& x) const override;

  const Mat& matrix() const { return af_; }

private:
  IntMat a_;
  Mat af_;
  Mat inv_;
};

/// Sup-norm torus distance: min over k in {-1,0,1}^d of |x - y + k|_inf.
double torus_distance(const TorusPoint& x, const TorusPoint& y);
double torus_distance(std::span<const double> x, std::span<const double> y);

/// Componentwise difference x - y reduced to [-1/2, 1/2)^d.
Vec torus_difference(const Vec& x, const Vec& y);

/// max_{0 <= j < n} d(f^j x, f^j y).
double bowen_distance(const TorusMap& map, int n, const TorusPoint& x, const TorusPoint& y);

/// [x, f x, ..., f^n x].
std::vector<TorusPoint> orbit(const TorusMap& map, const TorusPoint& x, int n);

/// D_x f^n = Df(f^{n-1} x) ... Df(x).
Mat jacobian_cocycle(const TorusMap& map, const TorusPoint& x, int n);

/// Largest singular value.
double operator_norm(const Mat& m);

/// Throws ContractViolation when the dimensions differ.
void require_same_dimension(int a, int b, const char* what);

}  // namespace toralent
