#include "toralent/linear.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace toralent {

namespace {

std::int64_t checked_mul_add(std::int64_t acc, std::int64_t a, std::int64_t b) {
  std::int64_t prod = 0, sum = 0;
  if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &sum)) {
    throw ArithmeticOverflow("integer matrix product overflows 64 bits");
  }
  return sum;
}

IntMat checked_product(const IntMat& a, const IntMat& b) {
  IntMat c = IntMat::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      std::int64_t acc = 0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) acc = checked_mul_add(acc, a(i, k), b(k, j));
      c(i, j) = acc;
    }
  return c;
}

}  // namespace

IntegerAutomorphism::IntegerAutomorphism(IntMat entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) throw ContractViolation("IntegerAutomorphism: matrix must be square and non-empty");
  if (entries_.rows() > 8) throw UnsupportedDimension("IntegerAutomorphism: dimension > 8 not supported");
  const BigInt det = integer_determinant(entries_);
  if (det != 1 && det != -1) throw ContractViolation("IntegerAutomorphism: |det| must be 1, got " + det.str());
  det_ = static_cast<std::int64_t>(det);
}

IntegerAutomorphism IntegerAutomorphism::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  const auto d = static_cast<Eigen::Index>(rows.size());
  IntMat m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != d) throw ContractViolation("IntegerAutomorphism: rows must form a square matrix");
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return IntegerAutomorphism(m);
}

IntegerAutomorphism IntegerAutomorphism::parse(std::string_view text) {
  std::vector<std::vector<std::int64_t>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::int64_t> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        throw ContractViolation("matrix text: not an integer: '" + tok + "'");
      }
      if (used != tok.size()) throw ContractViolation("matrix text: not an integer: '" + tok + "'");
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ContractViolation("matrix text: no rows");
  return from_rows(rows);
}

IntegerAutomorphism IntegerAutomorphism::identity(int d) { return IntegerAutomorphism(IntMat::Identity(d, d)); }

IntegerAutomorphism IntegerAutomorphism::power(int k) const {
  if (k < 0) return inverse().power(-k);
  IntMat result = IntMat::Identity(entries_.rows(), entries_.cols());
  IntMat base = entries_;
  while (k > 0) {
    if (k & 1) result = checked_product(result, base);
    k >>= 1;
    if (k > 0) base = checked_product(base, base);
  }
  return IntegerAutomorphism(result);
}

IntegerAutomorphism IntegerAutomorphism::inverse() const {
  const Mat inv = entries_.cast<double>().inverse();
  IntMat cand(inv.rows(), inv.cols());
  for (Eigen::Index i = 0; i < inv.rows(); ++i)
    for (Eigen::Index j = 0; j < inv.cols(); ++j) cand(i, j) = static_cast<std::int64_t>(std::llround(inv(i, j)));
  if (checked_product(entries_, cand) != IntMat::Identity(entries_.rows(), entries_.cols())) {
    throw ArithmeticOverflow("IntegerAutomorphism::inverse: entries too large for exact inversion");
  }
  return IntegerAutomorphism(cand);
}

std::string IntegerAutomorphism::to_string() const {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) os << (j ? " " : "") << entries_(i, j);
    os << "\n";
  }
  return os.str();
}

IntegerAutomorphism cat_map() { return IntegerAutomorphism::from_rows({{2, 1}, {1, 1}}); }

IntPoly characteristic_polynomial(const IntegerAutomorphism& a) { return characteristic_polynomial(a.entries()); }

namespace {

Mat kernel_of_root_factor(const Mat& a, const std::vector<Eigenvalue>& roots, Stability kind) {
  const Eigen::Index d = a.rows();
  int k = 0;
  for (const auto& e : roots)
    if (e.kind == kind) k += e.multiplicity;
  if (k == 0) return Mat(d, 0);
  if (k == d) return Mat::Identity(d, d);
  // coefficients of prod (x - lambda)^m, ascending
  std::vector<std::complex<long double>> c{1.0L};
  for (const auto& e : roots) {
    if (e.kind != kind) continue;
    const std::complex<long double> lam(e.value.real(), e.value.imag());
    for (int rep = 0; rep < e.multiplicity; ++rep) {
      std::vector<std::complex<long double>> next(c.size() + 1, 0.0L);
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i + 1] += c[i];
        next[i] -= lam * c[i];
      }
      c = std::move(next);
    }
  }
  Mat p = Mat::Zero(d, d);
  for (auto it = c.rbegin(); it != c.rend(); ++it) p = p * a + static_cast<double>(it->real()) * Mat::Identity(d, d);
  Eigen::JacobiSVD<Mat> svd(p, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(k);
}

}  // namespace

SpectralSplitting spectral_split(const IntegerAutomorphism& a, double tol) {
  if (!(tol > 0.0)) throw ContractViolation("spectral_split: tol must be positive");
  SpectralSplitting out;
  out.tol = tol;
  out.charpoly = characteristic_polynomial(a);
  const auto parts = squarefree_decomposition(out.charpoly);
  for (std::size_t idx = 0; idx < parts.size(); ++idx) {
    const IntPoly& part = parts[idx];
    if (part.degree() < 1) continue;
    const int mult = static_cast<int>(idx) + 1;
    const auto roots = squarefree_roots(part);
    int numeric_center = 0;
    for (const auto& r : roots) {
      Eigenvalue e;
      e.value = {static_cast<double>(r.real()), static_cast<double>(r.imag())};
      e.modulus = std::abs(r);
      e.multiplicity = mult;
      if (e.modulus > 1.0L + tol) {
        e.kind = Stability::unstable;
      } else if (e.modulus < 1.0L - tol) {
        e.kind = Stability::stable;
      } else {
        e.kind = Stability::center;
        ++numeric_center;
      }
      out.eigenvalues.push_back(e);
    }
    const int exact_center = unit_circle_root_count(part);
    if (exact_center != numeric_center) {
      std::ostringstream os;
      os << "spectral_split: factor " << part.to_string() << " has " << numeric_center
         << " roots within tol of the unit circle numerically but " << exact_center << " exactly";
      throw ClassificationAmbiguity(os.str(), numeric_center * mult, exact_center * mult);
    }
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](const Eigenvalue& x, const Eigenvalue& y) {
    if (x.modulus != y.modulus) return x.modulus > y.modulus;
    return std::arg(x.value) > std::arg(y.value);
  });
  const Mat af = a.entries().cast<double>();
  out.basis_u = kernel_of_root_factor(af, out.eigenvalues, Stability::unstable);
  out.basis_c = kernel_of_root_factor(af, out.eigenvalues, Stability::center);
  out.basis_s = kernel_of_root_factor(af, out.eigenvalues, Stability::stable);
  const Eigen::Index d = af.rows();
  Mat basis(d, d);
  basis << out.basis_u, out.basis_c, out.basis_s;
  const Mat inv = basis.inverse();
  const auto ku = out.basis_u.cols(), kc = out.basis_c.cols(), ks = out.basis_s.cols();
  out.proj_u = out.basis_u * inv.topRows(ku);
  out.proj_c = out.basis_c * inv.middleRows(ku, kc);
  out.proj_s = out.basis_s * inv.bottomRows(ks);
  return out;
}

Vec SpectralSplitting::unstable_vector() const {
  if (dim_u() != 1) throw UnsupportedDimension("unstable_vector: requires a one-dimensional unstable space");
  Vec u = basis_u.col(0).normalized();
  Eigen::Index imax = 0;
  u.cwiseAbs().maxCoeff(&imax);
  if (u[imax] < 0) u = -u;
  return u;
}

std::string to_string(SpectralClass c) {
  switch (c) {
    case SpectralClass::hyperbolic: return "hyperbolic";
    case SpectralClass::partially_hyperbolic: return "partially_hyperbolic";
    case SpectralClass::quasiunipotent: return "quasiunipotent";
  }
  return "unknown";
}

std::vector<int> cyclotomic_divisors(const IntPoly& p) {
  const int d = p.degree();
  std::vector<int> out;
  for (int m = 1; m <= 2 * d * d; ++m) {
    const IntPoly phi = cyclotomic(m);
    if (phi.degree() > d) continue;
    IntPoly q;
    if (exact_divide(p, phi, q)) out.push_back(m);
  }
  return out;
}

Classification classify(const IntegerAutomorphism& a, const SpectralSplitting& split) {
  Classification c;
  c.dim_u = split.dim_u();
  c.dim_c = split.dim_c();
  c.dim_s = split.dim_s();
  if (c.dim_u == 0) {
    c.kind = SpectralClass::quasiunipotent;
  } else if (c.dim_c == 0) {
    c.kind = SpectralClass::hyperbolic;
  } else {
    c.kind = SpectralClass::partially_hyperbolic;
  }
  c.cyclotomic_orders = cyclotomic_divisors(split.charpoly.is_zero() ? characteristic_polynomial(a) : split.charpoly);
  c.ergodic = c.cyclotomic_orders.empty();
  return c;
}

Classification classify(const IntegerAutomorphism& a) { return classify(a, spectral_split(a)); }

double exact_entropy(const SpectralSplitting& split) {
  long double h = 0;
  for (const auto& e : split.eigenvalues)
    if (e.kind == Stability::unstable) h += e.multiplicity * std::log(e.modulus);
  return static_cast<double>(h);
}

double exact_entropy(const IntegerAutomorphism& a) { return exact_entropy(spectral_split(a)); }

std::vector<TorusPoint> LeafPatch::samples(double spacing) const {
  if (!(spacing > 0.0)) throw ContractViolation("LeafPatch::samples: spacing must be positive");
  const auto n = static_cast<int>(std::ceil(2.0 * delta / spacing));
  std::vector<TorusPoint> out;
  out.reserve(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double a = -delta + 2.0 * delta * i / n;
      const double b = -delta + 2.0 * delta * j / n;
      out.push_back(origin.translated(a * basis.col(0) + b * basis.col(1)));
    }
  return out;
}

UnstableLeaf linear_unstable_leaf(const IntegerAutomorphism& a, const TorusPoint& x, double delta, double spacing) {
  if (!(delta > 0.0)) throw ContractViolation("linear_unstable_leaf: delta must be positive");
  require_same_dimension(a.dimension(), x.dimension(), "linear_unstable_leaf");
  const SpectralSplitting split = spectral_split(a);
  if (split.dim_u() == 0) throw NoUnstableDirection("linear_unstable_leaf: automorphism has no unstable direction");
  if (split.dim_u() > 2) throw UnsupportedDimension("linear_unstable_leaf: unstable dimension > 2 not supported");
  if (split.dim_u() == 1) return LeafPolyline::segment(x, split.unstable_vector(), -delta, delta, spacing);
  Eigen::HouseholderQR<Mat> qr(split.basis_u);
  Mat q = qr.householderQ() * Mat::Identity(a.dimension(), 2);
  return LeafPatch{x, q, delta};
}

LeafPolyline linear_unstable_polyline(const IntegerAutomorphism& a, const TorusPoint& x, double delta, double spacing) {
  auto leaf = linear_unstable_leaf(a, x, delta, spacing);
  if (auto* p = std::get_if<LeafPolyline>(&leaf)) return *p;
  throw UnsupportedDimension("linear_unstable_polyline: unstable dimension is 2");
}

}  // namespace toralent
