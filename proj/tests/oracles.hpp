#pragma once
// Test-only oracles. Nothing here calls into the code paths they check.

#include <cmath>
#include <algorithm>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "toralent/core.hpp"

namespace oracle {

/// Brute-force sup-norm torus distance over every translate in {-1,0,1}^d.
inline double torus_distance_brute(const toralent::Vec& x, const toralent::Vec& y) {
  const int d = static_cast<int>(x.size());
  int total = 1;
  for (int i = 0; i < d; ++i) total *= 3;
  double best = 1e300;
  for (int code = 0; code < total; ++code) {
    int c = code;
    double m = 0.0;
    for (int i = 0; i < d; ++i) {
      const int k = c % 3 - 1;
      c /= 3;
      m = std::max(m, std::abs(x[i] - y[i] + k));
    }
    best = std::min(best, m);
  }
  return best;
}

/// Greedy (n, eps)-separated subset by scanning every kept point for every
/// candidate, with orbits from direct integer-matrix products mod 1.
inline std::size_t greedy_separated_brute(const toralent::IntMat& a, const std::vector<toralent::Vec>& candidates, int n,
                                          double eps) {
  const toralent::Mat af = a.cast<double>();
  std::vector<std::vector<toralent::Vec>> kept;
  auto axis_gap = [](double u, double v) {
    double best = 1e300;
    for (int k = -1; k <= 1; ++k) best = std::min(best, std::abs(u - v + k));
    return best;
  };
  for (const auto& c : candidates) {
    std::vector<toralent::Vec> orb{c};
    for (int j = 1; j < n; ++j) {
      toralent::Vec y = af * orb.back();
      for (int i = 0; i < y.size(); ++i) y[i] -= std::floor(y[i]);
      orb.push_back(y);
    }
    bool ok = true;
    for (const auto& k : kept) {
      bool far = false;
      for (int j = 0; j < n && !far; ++j)
        for (int i = 0; i < c.size() && !far; ++i) far = axis_gap(orb[static_cast<std::size_t>(j)][i], k[static_cast<std::size_t>(j)][i]) > eps;
      if (!far) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(std::move(orb));
  }
  return kept.size();
}

/// Covering radius by scanning every point for every cell-centred probe.
inline double covering_radius_brute(int d, const std::vector<toralent::Vec>& pts, int per_axis) {
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  toralent::Vec p(d);
  double worst = 0.0;
  while (true) {
    for (int i = 0; i < d; ++i) p[i] = (idx[static_cast<std::size_t>(i)] + 0.5) / per_axis;
    double best = 1e300;
    for (const auto& q : pts) best = std::min(best, torus_distance_brute(p, q));
    worst = std::max(worst, best);
    int a = 0;
    while (a < d && ++idx[static_cast<std::size_t>(a)] == per_axis) idx[static_cast<std::size_t>(a++)] = 0;
    if (a == d) break;
  }
  return worst;
}

/// For a hyperbolic 2x2 map with unit eigenvectors u (expanding) and v
/// (contracting): does A^k x + s u, |s| <= half_len, meet x0 + t v + m for an
/// integer m with |t| <= rho and |s| <= half_len - margin? Solved in closed
/// form for every integer translate in range.
inline bool linear_crossing_exists(const toralent::IntMat& a, const toralent::Vec& u, const toralent::Vec& v,
                                   const toralent::Vec& x, const toralent::Vec& x0, int k, double half_len,
                                   double margin, double rho) {
  toralent::Vec y = x;
  const toralent::Mat af = a.cast<double>();
  for (int j = 0; j < k; ++j) {
    y = af * y;
    for (int i = 0; i < 2; ++i) y[i] -= std::floor(y[i]);
  }
  toralent::Mat m(2, 2);
  m.col(0) = u;
  m.col(1) = -v;
  const toralent::Mat minv = m.inverse();
  const int reach = static_cast<int>(std::ceil(half_len)) + 2;
  for (int i = -reach; i <= reach; ++i)
    for (int j = -reach; j <= reach; ++j) {
      toralent::Vec rhs = x0 - y;
      rhs[0] += i;
      rhs[1] += j;
      const toralent::Vec st = minv * rhs;
      if (std::abs(st[1]) <= rho && std::abs(st[0]) <= half_len - margin) return true;
    }
  return false;
}

/// Reciprocal quartic x^4 + a x^3 + b x^2 + a x + 1 with one real pair off the
/// unit circle and one conjugate pair on it, whose circle roots are not roots of unity.
struct Quartic {
  int a = 0, b = 0;
  double lambda_u = 0;  // expanding root
  std::complex<double> circle_root;
};

/// Enumerates |a|,|b| <= bound. The substitution y = x + 1/x turns the quartic
/// into y^2 + a y + (b - 2); |y| > 2 gives a real pair off the circle, |y| < 2 a
/// pair on it. Roots of unity are excluded by checking |z^m - 1| for m <= 1000.
inline std::vector<Quartic> partially_hyperbolic_quartics(int bound) {
  std::vector<Quartic> out;
  for (int a = -bound; a <= bound; ++a)
    for (int b = -bound; b <= bound; ++b) {
      const double disc = static_cast<double>(a * a - 4 * (b - 2));
      if (disc <= 0) continue;
      double y1 = (-a + std::sqrt(disc)) / 2, y2 = (-a - std::sqrt(disc)) / 2;
      if (std::abs(y1) < std::abs(y2)) std::swap(y1, y2);
      if (!(std::abs(y1) > 2.0 + 1e-12 && std::abs(y2) < 2.0 - 1e-12)) continue;
      const double lam = (std::abs(y1) + std::sqrt(y1 * y1 - 4)) / 2;
      const double theta = std::acos(y2 / 2);
      const std::complex<double> z = std::polar(1.0, theta);
      bool root_of_unity = false;
      for (int m = 1; m <= 1000 && !root_of_unity; ++m) root_of_unity = std::abs(std::pow(z, m) - 1.0) < 1e-6;
      if (root_of_unity) continue;
      out.push_back({a, b, lam, z});
    }
  return out;
}

inline toralent::IntMat companion(int a, int b) {
  // x^4 + a x^3 + b x^2 + a x + 1
  toralent::IntMat m = toralent::IntMat::Zero(4, 4);
  m(1, 0) = m(2, 1) = m(3, 2) = 1;
  m(0, 3) = -1;
  m(1, 3) = -a;
  m(2, 3) = -b;
  m(3, 3) = -a;
  return m;
}

/// The quartic used across the tests: x^4 - 3x^3 + x^2 - 3x + 1.
inline constexpr int kQuarticA = -3;
inline constexpr int kQuarticB = 1;

}  // namespace oracle
