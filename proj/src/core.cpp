#include "toralent/core.hpp"

#include <cmath>
#include <string>

namespace toralent {

double wrap_unit(double x) {
  double r = x - std::floor(x);
  // floor can round x - floor(x) up to exactly 1 for tiny negative x
  if (r >= 1.0) r = 0.0;
  return r;
}

TorusPoint::TorusPoint(const Vec& coords) : coords_(coords) {
  if (coords_.size() < 1) throw ContractViolation("TorusPoint: dimension must be >= 1");
  for (Eigen::Index i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i])) throw ContractViolation("TorusPoint: non-finite coordinate");
    coords_[i] = wrap_unit(coords_[i]);
  }
}

TorusPoint::TorusPoint(std::initializer_list<double> coords)
    : TorusPoint(Vec(Eigen::Map<const Vec>(coords.begin(), static_cast<Eigen::Index>(coords.size())))) {}

TorusPoint TorusPoint::translated(const Vec& v) const {
  require_same_dimension(dimension(), static_cast<int>(v.size()), "TorusPoint::translated");
  return TorusPoint(Vec(coords_ + v));
}

Vec TorusMap::inverse(const Vec&) const {
  throw InversionError("inverse not available for this map");
}

TorusPoint TorusMap::apply(const TorusPoint& x) const {
  require_same_dimension(dimension(), x.dimension(), "TorusMap::apply");
  return TorusPoint(lift(x.coords()));
}

TorusPoint TorusMap::apply_inverse(const TorusPoint& x) const {
  require_same_dimension(dimension(), x.dimension(), "TorusMap::apply_inverse");
  return TorusPoint(inverse(x.coords()));
}

LinearTorusMap::LinearTorusMap(IntMat a) : a_(std::move(a)) {
  if (a_.rows() < 1 || a_.rows() != a_.cols()) throw ContractViolation("LinearTorusMap: matrix must be square");
  af_ = a_.cast<double>();
  const double det = af_.determinant();
  if (std::abs(det) < 0.5) throw ContractViolation("LinearTorusMap: singular matrix");
  inv_ = af_.inverse();
}

Vec LinearTorusMap::inverse(const Vec& x) const { return inv_ * x; }

void require_same_dimension(int a, int b, const char* what) {
  if (a != b) {
    throw ContractViolation(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                            std::to_string(b) + ")");
  }
}

double torus_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    require_same_dimension(static_cast<int>(x.size()), static_cast<int>(y.size()), "torus_distance");
  }
  // For canonical coordinates the minimizing translate per axis is independent,
  // so the sup over axes of the per-axis minimum equals the min over {-1,0,1}^d.
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = std::abs(x[i] - y[i]);
    d = std::min(d, 1.0 - d);
    if (d > best) best = d;
  }
  return best;
}

double torus_distance(const TorusPoint& x, const TorusPoint& y) {
  require_same_dimension(x.dimension(), y.dimension(), "torus_distance");
  return torus_distance(std::span<const double>(x.coords().data(), x.coords().size()),
                        std::span<const double>(y.coords().data(), y.coords().size()));
}

Vec torus_difference(const Vec& x, const Vec& y) {
  Vec d = x - y;
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] -= std::floor(d[i] + 0.5);
  return d;
}

double bowen_distance(const TorusMap& map, int n, const TorusPoint& x, const TorusPoint& y) {
  if (n < 1) throw ContractViolation("bowen_distance: n must be >= 1");
  require_same_dimension(x.dimension(), y.dimension(), "bowen_distance");
  require_same_dimension(map.dimension(), x.dimension(), "bowen_distance");
  TorusPoint a = x, b = y;
  double best = torus_distance(a, b);
  for (int j = 1; j < n; ++j) {
    a = map.apply(a);
    b = map.apply(b);
    best = std::max(best, torus_distance(a, b));
  }
  return best;
}

std::vector<TorusPoint> orbit(const TorusMap& map, const TorusPoint& x, int n) {
  if (n < 0) throw ContractViolation("orbit: n must be >= 0");
  require_same_dimension(map.dimension(), x.dimension(), "orbit");
  std::vector<TorusPoint> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(x);
  for (int j = 0; j < n; ++j) out.push_back(map.apply(out.back()));
  return out;
}

Mat jacobian_cocycle(const TorusMap& map, const TorusPoint& x, int n) {
  if (n < 1) throw ContractViolation("jacobian_cocycle: n must be >= 1");
  require_same_dimension(map.dimension(), x.dimension(), "jacobian_cocycle");
  TorusPoint p = x;
  Mat acc = map.jacobian(p);
  for (int j = 1; j < n; ++j) {
    p = map.apply(p);
    acc = map.jacobian(p) * acc;
  }
  return acc;
}

double operator_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

}  // namespace toralent
