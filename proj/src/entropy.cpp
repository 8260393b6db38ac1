#include "toralent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "toralent/parallel.hpp"
#include "toralent/perturbation.hpp"

namespace toralent {

namespace {

double circle_gap(double a, double b) {
  const double t = std::abs(a - b);
  return std::min(t, 1.0 - t);
}

// Cells of width >= eps on [0,1); the cells meeting [c - eps, c + eps] are
// the touched cells of an axis (two or three of them).
struct CellGrid {
  int m;
  double eps;

  explicit CellGrid(double e) : m(std::clamp(static_cast<int>(std::floor(1.0 / e)), 1, 1 << 14)), eps(e) {}

  int cell(double c) const { return std::min(m - 1, static_cast<int>(c * m)); }

  void touched(double c, std::vector<int>& out) const {
    out.clear();
    const int lo = static_cast<int>(std::floor((c - eps) * m));
    const int hi = static_cast<int>(std::floor((c + eps) * m));
    if (hi - lo + 1 >= m) {
      for (int i = 0; i < m; ++i) out.push_back(i);
    } else {
      for (int i = lo; i <= hi; ++i) out.push_back(((i % m) + m) % m);
    }
  }
};

// Calls fn(key) for every combination of one touched cell per axis, keys
// built in mixed radix m on top of `prefix`.
template <class F>
void for_each_key(const std::vector<std::vector<int>>& opts, int m, std::uint64_t prefix, F&& fn) {
  const std::size_t k = opts.size();
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    std::uint64_t key = prefix;
    for (std::size_t a = 0; a < k; ++a) key = key * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(opts[a][pick[a]]);
    fn(key);
    std::size_t a = 0;
    while (a < k && ++pick[a] == opts[a].size()) pick[a++] = 0;
    if (a == k) return;
  }
}

}  // namespace

std::size_t count_separated(const TorusMap& map, int n, double eps, const PointSet& candidates) {
  if (n < 1) throw ContractViolation("count_separated: n must be >= 1");
  if (!(eps > 0.0)) throw ContractViolation("count_separated: eps must be positive");
  require_same_dimension(map.dimension(), candidates.dim, "count_separated");
  const int d = map.dimension();
  const auto du = static_cast<std::size_t>(d);
  const auto nu = static_cast<std::size_t>(n);
  const std::size_t stride = nu * du;
  const CellGrid grid(eps);

  // A kept orbit s conflicts with x only if s_0 is within eps of x_0 and
  // s_{n-1} within eps of x_{n-1}. Kept orbits are filed under (cell of s_0,
  // every cell touched by the eps-box of s_{n-1}); a query enumerates the
  // cells touched by x_0's box together with the single cell of x_{n-1}.
  std::vector<double> kept;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  std::vector<double> orb(stride);
  std::vector<std::vector<int>> opts(du);

  auto conflicts = [&](const double* other) {
    for (std::size_t j = nu; j-- > 0;)
      for (std::size_t k = 0; k < du; ++k)
        if (circle_gap(orb[j * du + k], other[j * du + k]) > eps) return false;
    return true;
  };
  auto cell_key = [&](const double* p, std::uint64_t prefix) {
    for (std::size_t k = 0; k < du; ++k) prefix = prefix * static_cast<std::uint64_t>(grid.m) + static_cast<std::uint64_t>(grid.cell(p[k]));
    return prefix;
  };

  std::size_t count = 0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    Vec x = Eigen::Map<const Vec>(candidates.point(c), d);
    for (std::size_t j = 0; j < nu; ++j) {
      for (std::size_t k = 0; k < du; ++k) orb[j * du + k] = x[static_cast<Eigen::Index>(k)];
      if (j + 1 < nu) x = map.lift(x).unaryExpr([](double v) { return wrap_unit(v); });
    }
    const double* first = orb.data();
    const double* last = orb.data() + (nu - 1) * du;
    for (std::size_t k = 0; k < du; ++k) grid.touched(first[k], opts[k]);
    bool separated = true;
    // keys are (time-0 cell, time-(n-1) cell); enumerate the first half
    std::vector<std::uint64_t> keys;
    for_each_key(opts, grid.m, 0, [&](std::uint64_t k0) { keys.push_back(cell_key(last, k0)); });
    for (auto key : keys) {
      auto it = buckets.find(key);
      if (it == buckets.end()) continue;
      for (auto idx : it->second)
        if (conflicts(kept.data() + idx * stride)) {
          separated = false;
          break;
        }
      if (!separated) break;
    }
    if (!separated) continue;
    for (std::size_t k = 0; k < du; ++k) grid.touched(last[k], opts[k]);
    // for_each_key appends the time-(n-1) digits after the time-0 digits
    const std::uint64_t k0 = cell_key(first, 0);
    for_each_key(opts, grid.m, k0, [&](std::uint64_t key) { buckets[key].push_back(static_cast<std::uint32_t>(count)); });
    kept.insert(kept.end(), orb.begin(), orb.end());
    ++count;
  }
  return count;
}

PointSet separated_candidates(int dim, const SeparatedSchedule& s) {
  if (s.candidates == CandidateKind::grid) return uniform_grid(dim, s.grid_per_axis);
  return halton_points(dim, s.candidate_count, s.seed);
}

EntropyEstimate estimate_topological_entropy(const TorusMap& map, const SeparatedSchedule& s) {
  if (s.eps.empty()) throw ContractViolation("estimate_topological_entropy: empty eps ladder");
  if (s.n_min < 1 || s.n_max < s.n_min) throw ContractViolation("estimate_topological_entropy: bad n range");
  const double eps_min = *std::min_element(s.eps.begin(), s.eps.end());
  if (!(eps_min > 0.0)) throw ContractViolation("estimate_topological_entropy: eps must be positive");
  const double per_axis = s.candidates == CandidateKind::grid
                              ? static_cast<double>(s.grid_per_axis)
                              : std::pow(static_cast<double>(s.candidate_count), 1.0 / map.dimension());
  if (per_axis * eps_min < 4.0)
    throw ContractViolation("estimate_topological_entropy: need at least 4 candidates per eps-cell per axis");
  const auto candidates = separated_candidates(map.dimension(), s);

  std::vector<EpsilonCurve> curves(s.eps.size());
  const auto per_eps = static_cast<std::size_t>(s.n_max - s.n_min + 1);
  std::vector<double> logs(s.eps.size() * per_eps);
  parallel_for(logs.size(), s.threads, [&](std::size_t i) {
    const double eps = s.eps[i / per_eps];
    const int n = s.n_min + static_cast<int>(i % per_eps);
    logs[i] = std::log(static_cast<double>(count_separated(map, n, eps, candidates)));
  });
  for (std::size_t e = 0; e < s.eps.size(); ++e) {
    curves[e].eps = s.eps[e];
    for (std::size_t k = 0; k < per_eps; ++k) curves[e].curve.add(s.n_min + static_cast<double>(k), logs[e * per_eps + k]);
    curves[e].curve.refit(s.fit_min, s.fit_max);
  }
  return plateau_estimate(std::move(curves), s.plateau_tol);
}

GrowthCurve unstable_volume_growth(const TorusMap& map, const LeafPolyline& leaf, int n_max, double eps_geom,
                                   const VolumeGrowthOptions& opts) {
  if (n_max < 1) throw ContractViolation("unstable_volume_growth: n_max must be >= 1");
  GrowthCurve curve;
  LeafPolyline cur = leaf;
  curve.add(0, std::log(cur.length()));
  for (int n = 1; n <= n_max; ++n) {
    cur = grow_leaf(map, cur, 1, eps_geom, opts.vertex_cap);
    curve.add(n, std::log(cur.length()));
  }
  curve.refit(opts.fit_min, opts.fit_max < 0 ? n_max : opts.fit_max);
  return curve;
}

GrowthCurve estimate_unstable_volume_growth(const TorusMap& map, const TorusPoint& x, double delta, int n_max,
                                            double eps_geom, const VolumeGrowthOptions& opts) {
  return unstable_volume_growth(map, unstable_leaf(map, x, delta, eps_geom), n_max, eps_geom, opts);
}

std::size_t count_u_separated(const TorusMap& map, const LeafPolyline& leaf, int n, double eps, double sample_factor,
                              std::size_t vertex_cap) {
  if (n < 1) throw ContractViolation("count_u_separated: n must be >= 1");
  if (!(eps > 0.0) || !(sample_factor > 0.0 && sample_factor <= 0.25))
    throw ContractViolation("count_u_separated: need eps > 0 and sample spacing <= eps/4");
  const double h = eps * sample_factor;
  // refine the ball itself to spacing h, then grow; every vertex of the final
  // polyline is a sample
  const LeafPolyline fine = refine_leaf(map, leaf, h, vertex_cap);
  const LeafPolyline top = grow_leaf(map, fine, n - 1, h, vertex_cap);
  const std::size_t m = top.size();
  const int d = map.dimension();
  const auto du = static_cast<std::size_t>(d);

  // positions of the samples at step j, tracked forward from step 0
  std::vector<double> coords(m * du);
  std::vector<std::int64_t> offsets(m * du);
  for (std::size_t i = 0; i < m; ++i) fine.evaluate(map, top.param(i), coords.data() + i * du, offsets.data() + i * du);

  // arclength between consecutive samples, maximized over steps
  std::vector<double> cum(m, 0.0), best(m, 0.0);
  std::vector<double> gapmax(m > 0 ? m - 1 : 0, 0.0);
  std::vector<std::vector<double>> cums;
  cums.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    if (j > 0)
      for (std::size_t i = 0; i < m; ++i) step_lifted(map, coords.data() + i * du, offsets.data() + i * du);
    for (std::size_t i = 1; i < m; ++i) {
      double s = 0;
      for (std::size_t k = 0; k < du; ++k) {
        const double v = (coords[i * du + k] - coords[(i - 1) * du + k]) +
                         static_cast<double>(offsets[i * du + k] - offsets[(i - 1) * du + k]);
        s += v * v;
      }
      cum[i] = cum[i - 1] + std::sqrt(s);
    }
    cums.push_back(cum);
  }
  // greedy in leaf order; d^u_n to earlier kept points dominates the distance
  // to the last kept one, so only that comparison is needed
  std::size_t count = m > 0 ? 1 : 0;
  std::size_t last = 0;
  for (std::size_t i = 1; i < m; ++i) {
    double dist = 0;
    for (const auto& c : cums) dist = std::max(dist, c[i] - c[last]);
    if (dist > eps) {
      ++count;
      last = i;
    }
  }
  return count;
}

UnstableEntropyEstimate estimate_unstable_entropy(const TorusMap& map, const std::vector<TorusPoint>& x_samples,
                                                  double delta, const UnstableSchedule& s) {
  if (x_samples.empty()) throw ContractViolation("estimate_unstable_entropy: no sample points");
  if (s.eps.empty() || s.n_min < 1 || s.n_max < s.n_min) throw ContractViolation("estimate_unstable_entropy: bad schedule");
  const auto per_eps = static_cast<std::size_t>(s.n_max - s.n_min + 1);
  const std::size_t jobs = x_samples.size() * s.eps.size();
  std::vector<EpsilonCurve> curves(jobs);
  std::vector<LeafPolyline> leaves(x_samples.size());
  parallel_for(x_samples.size(), s.threads,
               [&](std::size_t i) { leaves[i] = unstable_leaf(map, x_samples[i], delta, s.leaf_eps_geom); });
  parallel_for(jobs, s.threads, [&](std::size_t job) {
    const std::size_t xi = job / s.eps.size();
    const double eps = s.eps[job % s.eps.size()];
    EpsilonCurve ec{eps, {}};
    for (std::size_t k = 0; k < per_eps; ++k) {
      const int n = s.n_min + static_cast<int>(k);
      ec.curve.add(n, std::log(static_cast<double>(count_u_separated(map, leaves[xi], n, eps, s.sample_factor, s.vertex_cap))));
    }
    ec.curve.refit(s.fit_min, s.fit_max);
    curves[job] = std::move(ec);
  });
  UnstableEntropyEstimate out;
  for (std::size_t xi = 0; xi < x_samples.size(); ++xi) {
    std::vector<EpsilonCurve> mine(curves.begin() + static_cast<std::ptrdiff_t>(xi * s.eps.size()),
                                   curves.begin() + static_cast<std::ptrdiff_t>((xi + 1) * s.eps.size()));
    auto est = plateau_estimate(std::move(mine), s.plateau_tol);
    out.per_point.push_back(est.value);
    if (xi == 0 || est.value > out.estimate.value) {
      out.estimate = std::move(est);
      out.argsup = xi;
    }
  }
  return out;
}

double ruelle_upper_bound(const TorusMap& map, const SpectralSplitting& base, int horizon, std::size_t sample_count,
                          std::uint64_t seed) {
  require_same_dimension(map.dimension(), base.dimension(), "ruelle_upper_bound");
  if (horizon < 1) throw ContractViolation("ruelle_upper_bound: N must be >= 1");
  if (sample_count < 1) throw ContractViolation("ruelle_upper_bound: sample_count must be >= 1");
  const auto pts = halton_points(map.dimension(), sample_count, seed);
  double center = -std::numeric_limits<double>::infinity();
  double unstable = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    TorusPoint x = pts.at(i);
    if (base.dim_u() > 0) {
      const Mat m = base.basis_u.transpose() * base.proj_u * map.jacobian(x) * base.basis_u;
      unstable = std::max(unstable, std::log(std::abs(m.determinant())));
    }
    if (base.dim_c() > 0) {
      Mat w = base.basis_c;
      for (int j = 0; j < horizon; ++j) {
        w = base.proj_c * (map.jacobian(x) * w);
        x = map.apply(x);
      }
      center = std::max(center, std::log(operator_norm(w)));
    }
  }
  double bound = 0.0;
  if (base.dim_u() > 0) bound += unstable;
  if (base.dim_c() > 0) bound += base.dim_c() * center / horizon;
  return bound;
}

}  // namespace toralent
