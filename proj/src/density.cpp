#include "toralent/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace toralent {

namespace {

double circle_gap(double a, double b) {
  const double t = std::abs(a - b);
  return std::min(t, 1.0 - t);
}

double sup_gap(const double* a, const double* b, int d) {
  double m = 0.0;
  for (int i = 0; i < d; ++i) m = std::max(m, circle_gap(a[i], b[i]));
  return m;
}

// Points bucketed into m^d cells of width 1/m, stored CSR-style.
struct Buckets {
  int d = 0;
  int m = 1;
  std::vector<std::size_t> start;
  std::vector<std::uint32_t> items;

  Buckets(const PointSet& pts, int cells_per_axis) : d(pts.dim), m(cells_per_axis) {
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(m);
    start.assign(total + 1, 0);
    std::vector<std::size_t> id(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      id[k] = cell_of(pts.point(k));
      ++start[id[k] + 1];
    }
    for (std::size_t c = 0; c < total; ++c) start[c + 1] += start[c];
    items.resize(pts.size());
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t k = 0; k < pts.size(); ++k) items[fill[id[k]]++] = static_cast<std::uint32_t>(k);
  }

  int axis_cell(double c) const { return std::min(m - 1, static_cast<int>(c * m)); }

  std::size_t cell_of(const double* p) const {
    std::size_t key = 0;
    for (int i = 0; i < d; ++i) key = key * static_cast<std::size_t>(m) + static_cast<std::size_t>(axis_cell(p[i]));
    return key;
  }
};

// Nearest sup-norm distance from `p` to the set, stopping early once it is
// known to be <= `enough` (the caller only needs to know it does not exceed that).
double nearest_distance(const PointSet& pts, const Buckets& b, const double* p, double enough) {
  const int d = b.d;
  const int m = b.m;
  const double w = 1.0 / m;
  std::vector<int> home(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) home[static_cast<std::size_t>(i)] = b.axis_cell(p[i]);
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> off(static_cast<std::size_t>(d));
  for (int r = 0;; ++r) {
    if (2 * r + 1 >= m) {
      // The ring covers the whole grid: finish with a full scan.
      for (std::size_t k = 0; k < pts.size(); ++k) best = std::min(best, sup_gap(p, pts.point(k), d));
      return best;
    }
    std::fill(off.begin(), off.end(), -r);
    while (true) {
      int shell = 0;
      for (int v : off) shell = std::max(shell, std::abs(v));
      if (shell == r) {
        std::size_t key = 0;
        for (int i = 0; i < d; ++i) {
          const int c = ((home[static_cast<std::size_t>(i)] + off[static_cast<std::size_t>(i)]) % m + m) % m;
          key = key * static_cast<std::size_t>(m) + static_cast<std::size_t>(c);
        }
        for (std::size_t q = b.start[key]; q < b.start[key + 1]; ++q)
          best = std::min(best, sup_gap(p, pts.point(b.items[q]), d));
      }
      int a = 0;
      while (a < d && ++off[static_cast<std::size_t>(a)] > r) off[static_cast<std::size_t>(a++)] = -r;
      if (a == d) break;
    }
    // Anything in a later ring is at least r cell widths away.
    if (best <= r * w || best <= enough) return best;
  }
}

double fractional(double x) { return x - std::floor(x); }

Vec lifted_difference(const LeafPolyline& leaf, std::size_t i, const Vec& x0) {
  Vec w(leaf.dimension());
  const double* c = leaf.coords().data() + i * static_cast<std::size_t>(leaf.dimension());
  for (int j = 0; j < leaf.dimension(); ++j) {
    const double t = c[j] - x0[j];
    w[j] = t - std::round(t);
  }
  return w;
}

}  // namespace

CoveringRadius covering_radius(const PointSet& points, double probe_h, std::size_t probe_budget) {
  if (points.size() == 0) throw ContractViolation("covering_radius: empty point set");
  if (!(probe_h > 0.0)) throw ContractViolation("covering_radius: probe resolution must be positive");
  const int d = points.dim;
  const auto per = static_cast<std::size_t>(std::ceil(1.0 / probe_h - 1e-9));
  double probes = 1.0;
  for (int i = 0; i < d; ++i) probes *= static_cast<double>(per);
  if (probes > static_cast<double>(probe_budget))
    throw ResourceError("covering_radius: " + std::to_string(static_cast<long long>(probes)) +
                        " probes exceed the budget of " + std::to_string(probe_budget));

  // About two points per cell, capped so the cell table stays small.
  const double target = std::pow(static_cast<double>(points.size()) / 2.0, 1.0 / d);
  const double table_cap = std::pow(4.0e6, 1.0 / d);
  const int m = std::max(1, static_cast<int>(std::min(target, table_cap)));
  const Buckets buckets(points, m);

  const double h = 1.0 / static_cast<double>(per);
  CoveringRadius out;
  out.probes = static_cast<std::size_t>(probes);
  out.probe_error = h * std::sqrt(static_cast<double>(d)) / 2.0;
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  std::vector<double> p(static_cast<std::size_t>(d));
  double radius = 0.0;
  while (true) {
    for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = (static_cast<double>(idx[static_cast<std::size_t>(i)]) + 0.5) * h;
    radius = std::max(radius, nearest_distance(points, buckets, p.data(), radius));
    int a = 0;
    while (a < d && ++idx[static_cast<std::size_t>(a)] == per) idx[static_cast<std::size_t>(a++)] = 0;
    if (a == d) break;
  }
  out.radius = radius;
  return out;
}

double strand_covering_radius(const Vec& u, double length) {
  if (u.size() != 2) throw UnsupportedDimension("strand_covering_radius: needs a direction in R^2");
  if (!(length >= 0.0)) throw ContractViolation("strand_covering_radius: negative length");
  const double l1 = std::abs(u[0]) + std::abs(u[1]);
  if (!(l1 > 0.0)) throw ContractViolation("strand_covering_radius: zero direction");
  const Vec v = u / u.norm();
  if (std::abs(v[1]) < 1e-15) return 0.5;
  const auto count = static_cast<std::size_t>(std::floor(length * std::abs(v[1])));
  if (count < 2) return 0.5;
  const double alpha = fractional(v[0] / v[1]);
  std::vector<double> xs(count);
  for (std::size_t k = 0; k < count; ++k) xs[k] = fractional(static_cast<double>(k) * alpha);
  std::sort(xs.begin(), xs.end());
  double gap = xs.front() + 1.0 - xs.back();
  for (std::size_t k = 1; k < count; ++k) gap = std::max(gap, xs[k] - xs[k - 1]);
  const double factor = std::abs(v[1]) / (std::abs(v[0]) + std::abs(v[1]));
  return std::min(0.5, gap / 2.0 * factor);
}

std::string to_string(DensityMethod m) {
  switch (m) {
    case DensityMethod::automatic: return "automatic";
    case DensityMethod::probe: return "probe";
    case DensityMethod::strand: return "strand";
  }
  return "?";
}

DensityProfile effective_density_profile(const IntegerAutomorphism& a, const TorusPoint& x, double tau, int n_min,
                                         int n_max, const DensityOptions& opts) {
  const int d = a.dimension();
  require_same_dimension(d, x.dimension(), "effective_density_profile");
  if (d > 3) throw UnsupportedDimension("effective_density_profile: probe scans need d <= 3");
  if (!(tau > 1.0)) throw ContractViolation("effective_density_profile: tau must exceed 1");
  if (n_min < 1 || n_max < n_min) throw ContractViolation("effective_density_profile: bad n range");
  const SpectralSplitting split = spectral_split(a);
  const Classification cls = classify(a, split);
  if (split.dim_u() == 0) throw NoUnstableDirection("effective_density_profile: no unstable direction");
  if (!cls.ergodic) throw ContractViolation("effective_density_profile: automorphism is not ergodic");
  if (split.dim_u() > 2) throw UnsupportedDimension("effective_density_profile: dim E^u > 2");

  DensityMethod method = opts.method;
  const bool strand_ok = d == 2 && split.dim_u() == 1;
  if (method == DensityMethod::automatic) method = strand_ok ? DensityMethod::strand : DensityMethod::probe;
  if (method == DensityMethod::strand && !strand_ok)
    throw ContractViolation("effective_density_profile: strand method needs d = 2 and dim E^u = 1");

  DensityProfile out;
  out.method = method;
  for (int n = n_min; n <= n_max; ++n) {
    const double r = std::pow(tau, n);
    double radius = 0.0, err = 0.0;
    if (method == DensityMethod::strand) {
      radius = strand_covering_radius(split.unstable_vector(), 2.0 * r);
    } else {
      const double per_side = std::ceil(2.0 * r / opts.probe_h) + 1.0;
      const double samples = split.dim_u() == 1 ? per_side : per_side * per_side;
      if (samples > static_cast<double>(opts.probe_budget))
        throw ResourceError("effective_density_profile: " + std::to_string(static_cast<long long>(samples)) +
                            " leaf samples at n = " + std::to_string(n) + " exceed the probe budget");
      PointSet pts;
      pts.dim = d;
      if (split.dim_u() == 1) {
        const Vec u = split.unstable_vector();
        const auto count = static_cast<std::size_t>(per_side);
        const double step = 2.0 * r / static_cast<double>(count - 1);
        pts.data.reserve(count * static_cast<std::size_t>(d));
        for (std::size_t k = 0; k < count; ++k) {
          const double s = -r + step * static_cast<double>(k);
          for (int i = 0; i < d; ++i) pts.data.push_back(wrap_unit(x[i] + s * u[i]));
        }
      } else {
        const LeafPatch patch{x, split.basis_u, r};
        for (const auto& p : patch.samples(opts.probe_h)) pts.push_back(p);
      }
      const CoveringRadius cr = covering_radius(pts, opts.probe_h, opts.probe_budget);
      radius = cr.radius;
      err = cr.probe_error;
    }
    out.n.push_back(n);
    out.radius.push_back(radius);
    out.probe_error.push_back(err);
    out.curve.add(std::log(static_cast<double>(n)), std::log(std::max(radius, 1e-300)));
  }
  const double lo = opts.fit_min > 0 ? opts.fit_min : n_min;
  const double hi = opts.fit_max > 0 ? opts.fit_max : n_max;
  out.curve.refit(std::log(lo), std::log(hi));
  return out;
}

double Rectangle::center_stable_radius() const { return std::exp(-n * eps) * delta / (2.0 * c_eps); }

bool Rectangle::contains(const TorusPoint& p, const SpectralSplitting& base) const {
  require_same_dimension(p.dimension(), x0.dimension(), "Rectangle::contains");
  const Vec w = torus_difference(p.coords(), x0.coords());
  const Vec cs = (base.proj_c + base.proj_s) * w;
  const Vec uu = base.proj_u * w;
  return cs.norm() <= center_stable_radius() && uu.norm() <= 2.0 * delta;
}

RectangleHit rectangle_hit(const TorusMap& map, const SpectralSplitting& base, const LeafPolyline& leaf,
                           const Rectangle& rect, int k, double eps_geom, std::size_t vertex_cap) {
  if (k < 1) throw ContractViolation("rectangle_hit: k must be >= 1");
  if (base.dim_u() != 1) throw NoUnstableDirection("rectangle_hit: needs a one-dimensional unstable direction");
  require_same_dimension(map.dimension(), rect.x0.dimension(), "rectangle_hit");
  const LeafPolyline img = grow_leaf(map, leaf, k, eps_geom, vertex_cap);
  const Vec bu = base.basis_u.col(0);
  const Mat pcs = base.proj_c + base.proj_s;
  const Vec cu = base.proj_u.transpose() * bu;  // u-coordinate of w is cu . w
  const double rho = rect.center_stable_radius();
  const double len = img.length();
  const Vec& x0 = rect.x0.coords();

  RectangleHit out;
  out.k = k;
  for (std::size_t i = 0; i + 1 < img.size(); ++i) {
    const Vec wa = lifted_difference(img, i, x0);
    const Vec seg = img.segment_vector(i);
    const double ua = cu.dot(wa);
    const double ub = ua + cu.dot(seg);
    if ((ua > 0 && ub > 0) || (ua < 0 && ub < 0)) continue;
    const double t = ua == ub ? 0.0 : ua / (ua - ub);
    const Vec wy = wa + t * seg;
    if ((pcs * wy).norm() > rho) continue;
    const double pos = img.arclength(i) + t * seg.norm();
    if (pos < 2.0 * rect.delta || pos > len - 2.0 * rect.delta) continue;
    out.hit = true;
    out.y = rect.x0.translated(wy);
    out.arclength = pos;
    return out;
  }
  return out;
}

int minimal_hitting_k(const TorusMap& map, const SpectralSplitting& base, const LeafPolyline& leaf,
                      const Rectangle& rect, int k_max, double eps_geom, std::size_t vertex_cap) {
  for (int k = 1; k <= k_max; ++k)
    if (rectangle_hit(map, base, leaf, rect, k, eps_geom, vertex_cap).hit) return k;
  return -1;
}

std::size_t plaque_count(const LeafPolyline& leaf, double delta, std::vector<TorusPoint>* witnesses) {
  if (!(delta > 0.0)) throw ContractViolation("plaque_count: delta must be positive");
  const double len = leaf.length();
  const double slack = 1e-12 * std::max(1.0, len);
  std::size_t count = 0;
  for (double pos = 2.0 * delta; pos <= len - 2.0 * delta + slack; pos = 2.0 * delta + 4.0 * delta * static_cast<double>(count)) {
    if (witnesses) {
      const Vec p = leaf.lifted_at_arclength(std::min(pos, len));
      Vec c(p.size());
      for (int i = 0; i < p.size(); ++i) c[i] = wrap_unit(p[i]);
      witnesses->emplace_back(c);
    }
    ++count;
  }
  return count;
}

UegCertificate ueg_certificate(const TorusMap& map, double rho, double delta, double h_ref, int N,
                               const std::vector<LeafPolyline>& leaves, double eps_geom, std::size_t vertex_cap) {
  if (!(rho > 0.0) || !(delta > 0.0)) throw ContractViolation("ueg_certificate: rho and delta must be positive");
  if (N < 1) throw ContractViolation("ueg_certificate: N must be >= 1");
  if (leaves.empty()) throw ContractViolation("ueg_certificate: no basepoints");
  UegCertificate out;
  out.N = N;
  out.required = std::exp(N * (h_ref - 3.0 * rho));
  out.count = std::numeric_limits<std::size_t>::max();
  for (std::size_t b = 0; b < leaves.size(); ++b) {
    const LeafPolyline img = grow_leaf(map, leaves[b], N, eps_geom, vertex_cap);
    const std::size_t c = plaque_count(img, delta);
    out.per_basepoint.push_back(c);
    if (c < out.count) {
      out.count = c;
      out.argmin = b;
      out.witnesses.clear();
      plaque_count(img, delta, &out.witnesses);
    }
  }
  out.pass = static_cast<double>(out.count) >= out.required;
  return out;
}

UegCertificate ueg_certificate_search(const TorusMap& map, double rho, double delta, double h_ref, int n_max,
                                      const std::vector<LeafPolyline>& leaves, double eps_geom,
                                      std::size_t vertex_cap) {
  if (n_max < 1) throw ContractViolation("ueg_certificate_search: n_max must be >= 1");
  UegCertificate cert;
  for (int N = 1; N <= n_max; ++N) {
    cert = ueg_certificate(map, rho, delta, h_ref, N, leaves, eps_geom, vertex_cap);
    if (cert.pass) break;
  }
  return cert;
}

double torus_integral(const SmoothObservable& phi, int g) {
  if (g < 1) throw ContractViolation("torus_integral: g must be >= 1");
  const int d = phi.dimension();
  double total = 1.0;
  for (int i = 0; i < d; ++i) total *= g;
  if (total > static_cast<double>(1u << 26))
    throw ResourceError("torus_integral: " + std::to_string(static_cast<long long>(total)) + " nodes exceed the budget");
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  Vec p(d);
  long double sum = 0.0L;
  while (true) {
    for (int i = 0; i < d; ++i) p[i] = (idx[static_cast<std::size_t>(i)] + 0.5) / g;
    sum += phi.value(p);
    int a = 0;
    while (a < d && ++idx[static_cast<std::size_t>(a)] == g) idx[static_cast<std::size_t>(a++)] = 0;
    if (a == d) break;
  }
  return static_cast<double>(sum / total);
}

namespace {

struct LeafSums {
  double psi = 0;                // int psi dm^u
  double psi_abs = 0;
  std::vector<double> corr;      // int phi(f^n p) psi(p) dm^u, per n
  std::vector<double> corr_abs;  // same with absolute values, for roundoff
};

LeafSums leaf_sums(const TorusMap& map, const LeafPolyline& leaf, const SmoothObservable& phi,
                   const SmoothObservable& psi, int n_min, int n_max, std::size_t count) {
  LeafSums s;
  const auto span = static_cast<std::size_t>(n_max - n_min + 1);
  s.corr.assign(span, 0.0);
  s.corr_abs.assign(span, 0.0);
  const double len = leaf.length();
  const double h = len / static_cast<double>(count);
  const int d = leaf.dimension();
  Vec p(d);
  for (std::size_t j = 0; j < count; ++j) {
    const Vec lp = leaf.lifted_at_arclength((static_cast<double>(j) + 0.5) * h);
    for (int i = 0; i < d; ++i) p[i] = wrap_unit(lp[i]);
    const double w = psi.value(p) * h;
    s.psi += w;
    s.psi_abs += std::abs(w);
    if (w == 0.0) continue;
    for (int n = 0; n <= n_max; ++n) {
      if (n >= n_min) {
        const double v = phi.value(p) * w;
        s.corr[static_cast<std::size_t>(n - n_min)] += v;
        s.corr_abs[static_cast<std::size_t>(n - n_min)] += std::abs(v);
      }
      if (n < n_max) {
        p = map.lift(p);
        for (int i = 0; i < d; ++i) p[i] = wrap_unit(p[i]);
      }
    }
  }
  return s;
}

}  // namespace

MixingEstimate mixing_decay_estimate(const TorusMap& map, const LeafPolyline& leaf, const SmoothObservable& phi,
                                     const SmoothObservable& psi, int n_min, int n_max, const MixingOptions& opts) {
  require_same_dimension(map.dimension(), leaf.dimension(), "mixing_decay_estimate");
  require_same_dimension(map.dimension(), phi.dimension(), "mixing_decay_estimate");
  require_same_dimension(map.dimension(), psi.dimension(), "mixing_decay_estimate");
  if (n_min < 0 || n_max < n_min) throw ContractViolation("mixing_decay_estimate: bad n range");
  if (!(opts.quad_h > 0.0)) throw ContractViolation("mixing_decay_estimate: quad_h must be positive");
  if (opts.quad_g < 2) throw ContractViolation("mixing_decay_estimate: quad_g must be >= 2");
  if (!(leaf.length() > 0.0)) throw ContractViolation("mixing_decay_estimate: degenerate leaf");

  MixingEstimate out;
  const double phi_g = torus_integral(phi, opts.quad_g);
  const double phi_half = torus_integral(phi, opts.quad_g / 2);
  out.phi_integral = phi_g;
  // Step halving plus a summation allowance on the g^d nodes.
  const double eps_mach = std::numeric_limits<double>::epsilon();
  out.phi_integral_error = std::abs(phi_g - phi_half) + eps_mach * std::pow(opts.quad_g, map.dimension()) * phi.sup_norm();

  const auto coarse_count = static_cast<std::size_t>(std::ceil(leaf.length() / opts.quad_h));
  const LeafSums coarse = leaf_sums(map, leaf, phi, psi, n_min, n_max, coarse_count);
  const LeafSums fine = leaf_sums(map, leaf, phi, psi, n_min, n_max, 2 * coarse_count);
  out.psi_leaf_integral = fine.psi;

  // Orbit roundoff: a relative error of ~1e-16 per step is stretched by at
  // most |Df|^n before it reaches phi.
  const double stretch = operator_norm(map.jacobian(leaf.point(leaf.basepoint_index())));
  const double sum_terms = static_cast<double>(2 * coarse_count);
  for (int n = n_min; n <= n_max; ++n) {
    const auto k = static_cast<std::size_t>(n - n_min);
    const double jc = coarse.corr[k] - phi_g * coarse.psi;
    const double jf = fine.corr[k] - phi_g * fine.psi;
    MixingPoint mp;
    mp.n = n;
    mp.d_n = std::abs(jf);
    mp.floor = std::abs(jf - jc) + std::abs(fine.psi) * out.phi_integral_error +
               sum_terms * eps_mach * (fine.corr_abs[k] + std::abs(phi_g) * fine.psi_abs) +
               10.0 * eps_mach * std::pow(std::max(1.0, stretch), n) * phi.gradient_sup() * fine.psi_abs;
    const bool in_window = (opts.fit_min <= 0 || n >= opts.fit_min) && (opts.fit_max <= 0 || n <= opts.fit_max);
    mp.used = in_window && mp.d_n > 0.0 && mp.d_n >= opts.floor_factor * mp.floor;
    if (mp.used) out.curve.add(n, std::log(mp.d_n));
    out.points.push_back(mp);
  }
  if (out.curve.points.size() < 2) {
    out.indeterminate = true;
    return out;
  }
  out.curve.refit();
  out.alpha_fit = -out.curve.fit.slope;
  out.residual = out.curve.fit.residual_rms;
  return out;
}

MixingEstimate mixing_decay_estimate(const IntegerAutomorphism& a, const TorusPoint& x, double delta,
                                     const SmoothObservable& phi, const SmoothObservable& psi, int n_min, int n_max,
                                     const MixingOptions& opts) {
  const SpectralSplitting split = spectral_split(a);
  if (split.dim_u() == 0) throw NoUnstableDirection("mixing_decay_estimate: no unstable direction");
  if (!classify(a, split).ergodic) throw ContractViolation("mixing_decay_estimate: automorphism is not ergodic");
  const LeafPolyline leaf = linear_unstable_polyline(a, x, delta, delta / 8.0);
  return mixing_decay_estimate(a.as_map(), leaf, phi, psi, n_min, n_max, opts);
}

}  // namespace toralent
