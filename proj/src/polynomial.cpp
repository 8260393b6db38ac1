#include "toralent/polynomial.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace toralent {

namespace mp = boost::multiprecision;
using Checked = mp::checked_int256_t;

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { normalize(); }

IntPoly IntPoly::from_ints(const std::vector<long long>& coeffs) {
  std::vector<BigInt> c;
  c.reserve(coeffs.size());
  for (long long v : coeffs) c.emplace_back(v);
  return IntPoly(std::move(c));
}

IntPoly IntPoly::monomial(const BigInt& c, int degree) {
  std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1, BigInt(0));
  v.back() = c;
  return IntPoly(std::move(v));
}

void IntPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::vector<BigInt> IntPoly::descending() const { return {c_.rbegin(), c_.rend()}; }

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<BigInt> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long long>(i);
  return IntPoly(std::move(d));
}

IntPoly IntPoly::reversed() const {
  if (c_.empty()) return {};
  // strip factors of x first so that reversal keeps the same degree semantics
  return IntPoly(std::vector<BigInt>(c_.rbegin(), c_.rend()));
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& v : c_) g = mp::gcd(g, v);
  return g;
}

IntPoly IntPoly::primitive() const {
  if (c_.empty()) return {};
  BigInt g = content();
  if (leading() < 0) g = -g;
  std::vector<BigInt> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] / g;
  return IntPoly(std::move(out));
}

bool IntPoly::is_reciprocal() const {
  if (c_.empty()) return false;
  const IntPoly r = reversed();
  if (r.degree() != degree()) return false;
  bool same = true, neg = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    same = same && (r.c_[i] == c_[i]);
    neg = neg && (r.c_[i] == -c_[i]);
  }
  return same || neg;
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<long double> IntPoly::eval(std::complex<long double> z) const {
  std::complex<long double> acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + static_cast<long double>(*it);
  return acc;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> out(a.c_.size() + b.c_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return IntPoly(std::move(out));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> out(std::max(a.c_.size(), b.c_.size()), BigInt(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return IntPoly(std::move(out));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> out(std::max(a.c_.size(), b.c_.size()), BigInt(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
  return IntPoly(std::move(out));
}

std::string IntPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& v = c_[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    BigInt mag = v < 0 ? BigInt(-v) : v;
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) os << mag;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

bool exact_divide(const IntPoly& a, const IntPoly& b, IntPoly& quotient) {
  if (b.is_zero()) throw ContractViolation("exact_divide: division by zero polynomial");
  if (a.is_zero()) {
    quotient = IntPoly();
    return true;
  }
  if (a.degree() < b.degree()) return false;
  std::vector<BigInt> r = a.coeffs();
  std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, BigInt(0));
  const BigInt& lb = b.leading();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    const BigInt& top = r[static_cast<std::size_t>(k + b.degree())];
    if (top % lb != 0) return false;
    BigInt f = top / lb;
    q[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= b.degree(); ++j) r[static_cast<std::size_t>(k + j)] -= f * b[j];
  }
  for (const auto& v : r)
    if (v != 0) return false;
  quotient = IntPoly(std::move(q));
  return true;
}

namespace {

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> r = a.coeffs();
  const int db = b.degree();
  const BigInt lb = b.leading();
  int dr = a.degree();
  while (dr >= db && dr >= 0) {
    const BigInt top = r[static_cast<std::size_t>(dr)];
    for (auto& v : r) v *= lb;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(dr - db + j)] -= top * b[j];
    // r[dr] is now zero
    r.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
    dr = static_cast<int>(r.size()) - 1;
  }
  return IntPoly(std::move(r));
}

IntPoly divide_or_throw(const IntPoly& a, const IntPoly& b) {
  IntPoly q;
  if (!exact_divide(a, b, q)) throw std::logic_error("polynomial division expected to be exact");
  return q;
}

using RatPoly = std::vector<Rational>;

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly rat_remainder(RatPoly a, const RatPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  trim(a);
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int da = static_cast<int>(a.size()) - 1;
    Rational f = a.back() / b.back();
    for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(da - db + j)] -= f * b[static_cast<std::size_t>(j)];
    a.pop_back();
    trim(a);
  }
  return a;
}

Rational rat_eval(const RatPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_variations(const std::vector<RatPoly>& seq, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& p : seq) {
    Rational v = rat_eval(p, x);
    int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

IntPoly poly_gcd(const IntPoly& a0, const IntPoly& b0) {
  IntPoly a = a0.primitive(), b = b0.primitive();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_remainder(a, b);
    a = b;
    b = r.primitive();
  }
  return a.primitive();
}

std::vector<IntPoly> squarefree_decomposition(const IntPoly& p0) {
  if (p0.degree() < 1) return {};
  const IntPoly p = p0.primitive();
  IntPoly g = poly_gcd(p, p.derivative());
  IntPoly w = divide_or_throw(p, g).primitive();
  std::vector<IntPoly> parts;
  while (w.degree() >= 1) {
    IntPoly y = poly_gcd(w, g);
    parts.push_back(divide_or_throw(w, y).primitive());
    w = y;
    g = divide_or_throw(g, y).primitive();
  }
  return parts;
}

IntPoly cyclotomic(int m) {
  if (m < 1) throw ContractViolation("cyclotomic: m must be >= 1");
  static std::mutex mu;
  static std::map<int, IntPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  IntPoly p = IntPoly::monomial(1, m) - IntPoly::from_ints({1});
  for (int k = 1; k < m; ++k)
    if (m % k == 0) p = divide_or_throw(p, cyclotomic(k));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(m, p);
  return p;
}

IntPoly trace_polynomial(const IntPoly& g) {
  if (g.degree() % 2 != 0 || g.reversed() != g) throw ContractViolation("trace_polynomial: input must be palindromic of even degree");
  const int m = g.degree() / 2;
  // V_k(y) = x^k + x^-k for y = x + 1/x
  IntPoly v_prev = IntPoly::from_ints({2});
  IntPoly v_cur = IntPoly::from_ints({0, 1});
  const IntPoly y = IntPoly::from_ints({0, 1});
  IntPoly q = IntPoly::from_ints({1}) * IntPoly(std::vector<BigInt>{g[m]});
  for (int k = 1; k <= m; ++k) {
    q = q + v_cur * IntPoly(std::vector<BigInt>{g[m + k]});
    IntPoly next = y * v_cur - v_prev;
    v_prev = v_cur;
    v_cur = next;
  }
  return q;
}

int sturm_count(const IntPoly& p, const Rational& lo, const Rational& hi) {
  if (p.degree() < 1) return 0;
  auto to_rat = [](const IntPoly& q) {
    RatPoly r;
    for (const auto& c : q.coeffs()) r.emplace_back(c);
    return r;
  };
  std::vector<RatPoly> seq{to_rat(p), to_rat(p.derivative())};
  while (true) {
    RatPoly r = rat_remainder(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  return sign_variations(seq, lo) - sign_variations(seq, hi);
}

int unit_circle_root_count(const IntPoly& s) {
  if (s.degree() < 1) return 0;
  int count = 0;
  IntPoly q = s.primitive();
  for (long long sgn : {1LL, -1LL}) {
    while (q.degree() >= 1 && q.eval(BigInt(sgn)) == 0) {
      ++count;
      q = divide_or_throw(q, IntPoly::from_ints({-sgn, 1}));
    }
  }
  if (q.degree() < 1) return count;
  IntPoly g = poly_gcd(q, q.reversed());
  if (g.degree() < 1) return count;
  if (g.reversed() != g) {
    IntPoly neg = IntPoly() - g;
    if (g.reversed() != neg) throw std::logic_error("unit_circle_root_count: gcd with reversal is not reciprocal");
    throw std::logic_error("unit_circle_root_count: anti-reciprocal factor without +-1 roots");
  }
  return count + 2 * sturm_count(trace_polynomial(g), Rational(-2), Rational(2));
}

std::vector<std::complex<long double>> squarefree_roots(const IntPoly& p) {
  using C = std::complex<long double>;
  const int m = p.degree();
  std::vector<C> roots;
  if (m < 1) return roots;
  std::vector<long double> c(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) c[static_cast<std::size_t>(i)] = static_cast<long double>(p[i]);
  auto eval = [&](C z, C& dp) {
    C v = 0;
    dp = 0;
    for (int i = m; i >= 0; --i) {
      dp = dp * z + v;
      v = v * z + c[static_cast<std::size_t>(i)];
    }
    return v;
  };
  if (m == 1) {
    roots.emplace_back(-c[0] / c[1], 0.0L);
    return roots;
  }
  // Cauchy bound for the initial circle
  long double bound = 0;
  for (int i = 0; i < m; ++i) bound = std::max(bound, std::abs(c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(m)]));
  const long double radius = 0.5L * (1.0L + bound);
  const long double pi = 3.14159265358979323846264338327950288L;
  for (int k = 0; k < m; ++k) roots.push_back(std::polar(radius, 2 * pi * k / m + 0.4L));
  for (int iter = 0; iter < 2000; ++iter) {
    long double worst = 0;
    for (int k = 0; k < m; ++k) {
      C dp;
      C v = eval(roots[static_cast<std::size_t>(k)], dp);
      if (v == C(0)) continue;
      C ratio = v / dp;
      C sum = 0;
      for (int j = 0; j < m; ++j)
        if (j != k) sum += 1.0L / (roots[static_cast<std::size_t>(k)] - roots[static_cast<std::size_t>(j)]);
      C step = ratio / (1.0L - ratio * sum);
      roots[static_cast<std::size_t>(k)] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(roots[static_cast<std::size_t>(k)])));
    }
    if (worst < 1e-18L) break;
  }
  for (auto& z : roots) {
    for (int it = 0; it < 3; ++it) {
      C dp;
      C v = eval(z, dp);
      if (dp != C(0)) z -= v / dp;
    }
    // conjugate-symmetric coefficients: snap numerically real roots
    if (std::abs(z.imag()) < 1e-16L * std::max(1.0L, std::abs(z))) z = C(z.real(), 0.0L);
  }
  return roots;
}

IntPoly characteristic_polynomial(const IntMat& a) {
  const int d = static_cast<int>(a.rows());
  if (d < 1 || a.cols() != a.rows()) throw ContractViolation("characteristic_polynomial: matrix must be square and non-empty");
  if (d > 8) throw UnsupportedDimension("characteristic_polynomial: dimension > 8 not supported");
  try {
    using CM = std::vector<std::vector<Checked>>;
    CM A(static_cast<std::size_t>(d), std::vector<Checked>(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Checked(a(i, j));
    auto mul = [d](const CM& x, const CM& y) {
      CM z(static_cast<std::size_t>(d), std::vector<Checked>(static_cast<std::size_t>(d), Checked(0)));
      for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
          const Checked& xik = x[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
          if (xik == 0) continue;
          for (int j = 0; j < d; ++j) z[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += xik * y[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        }
      return z;
    };
    std::vector<Checked> c(static_cast<std::size_t>(d) + 1, Checked(0));
    c[static_cast<std::size_t>(d)] = 1;
    CM M(static_cast<std::size_t>(d), std::vector<Checked>(static_cast<std::size_t>(d), Checked(0)));
    for (int k = 1; k <= d; ++k) {
      M = mul(A, M);
      for (int i = 0; i < d; ++i) M[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(d - k + 1)];
      CM AM = mul(A, M);
      Checked tr = 0;
      for (int i = 0; i < d; ++i) tr += AM[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
      if (tr % k != 0) throw std::logic_error("Faddeev-LeVerrier: inexact division");
      c[static_cast<std::size_t>(d - k)] = -(tr / k);
    }
    std::vector<BigInt> out;
    for (const auto& v : c) out.emplace_back(BigInt(v.str()));
    return IntPoly(std::move(out));
  } catch (const std::overflow_error& e) {
    throw ArithmeticOverflow(std::string("characteristic_polynomial: 256-bit overflow (") + e.what() + ")");
  } catch (const std::range_error& e) {
    throw ArithmeticOverflow(std::string("characteristic_polynomial: 256-bit overflow (") + e.what() + ")");
  }
}

IntMat companion_matrix(const IntPoly& monic) {
  const int d = monic.degree();
  if (d < 1 || monic.leading() != 1) throw ContractViolation("companion_matrix: polynomial must be monic of degree >= 1");
  IntMat m = IntMat::Zero(d, d);
  for (int i = 1; i < d; ++i) m(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) {
    const BigInt& ci = monic[i];
    if (ci > BigInt(INT64_MAX) || ci < BigInt(INT64_MIN)) throw ArithmeticOverflow("companion_matrix: coefficient exceeds 64 bits");
    m(i, d - 1) = -static_cast<std::int64_t>(ci);
  }
  return m;
}

BigInt integer_determinant(const IntMat& a) {
  const int d = static_cast<int>(a.rows());
  if (d < 1 || a.cols() != a.rows()) throw ContractViolation("integer_determinant: matrix must be square");
  try {
    std::vector<std::vector<Checked>> m(static_cast<std::size_t>(d), std::vector<Checked>(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Checked(a(i, j));
    Checked prev = 1;
    int sign = 1;
    for (int k = 0; k < d - 1; ++k) {
      auto K = static_cast<std::size_t>(k);
      if (m[K][K] == 0) {
        int swap_row = -1;
        for (int i = k + 1; i < d; ++i)
          if (m[static_cast<std::size_t>(i)][K] != 0) {
            swap_row = i;
            break;
          }
        if (swap_row < 0) return 0;
        std::swap(m[K], m[static_cast<std::size_t>(swap_row)]);
        sign = -sign;
      }
      for (int i = k + 1; i < d; ++i)
        for (int j = k + 1; j < d; ++j) {
          auto I = static_cast<std::size_t>(i), J = static_cast<std::size_t>(j);
          m[I][J] = (m[I][J] * m[K][K] - m[I][K] * m[K][J]) / prev;
        }
      prev = m[K][K];
    }
    Checked det = m[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(d - 1)] * sign;
    return BigInt(det.str());
  } catch (const std::overflow_error& e) {
    throw ArithmeticOverflow(std::string("integer_determinant: 256-bit overflow (") + e.what() + ")");
  }
}

}  // namespace toralent
