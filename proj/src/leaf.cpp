#include "toralent/leaf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace toralent {

void step_lifted(const TorusMap& map, double* coords, std::int64_t* offset) {
  const int d = map.dimension();
  const Vec y = map.lift(Eigen::Map<const Vec>(coords, d));
  const IntMat& L = map.homotopy_class();
  std::vector<std::int64_t> next(static_cast<std::size_t>(d), 0);
  for (int i = 0; i < d; ++i) {
    std::int64_t acc = 0;
    for (int j = 0; j < d; ++j) acc += L(i, j) * offset[j];
    next[static_cast<std::size_t>(i)] = acc;
  }
  for (int i = 0; i < d; ++i) {
    const double fl = std::floor(y[i]);
    double frac = y[i] - fl;
    std::int64_t k = next[static_cast<std::size_t>(i)] + static_cast<std::int64_t>(fl);
    if (frac >= 1.0) {
      frac = 0.0;
      k += 1;
    }
    coords[i] = frac;
    offset[i] = k;
  }
}

LeafPolyline LeafPolyline::segment(const TorusPoint& origin, const Vec& direction, double s_lo, double s_hi,
                                   double spacing) {
  if (!(s_lo <= 0.0 && s_hi >= 0.0)) throw ContractViolation("LeafPolyline::segment: need s_lo <= 0 <= s_hi");
  if (!(spacing > 0.0)) throw ContractViolation("LeafPolyline::segment: spacing must be positive");
  std::vector<double> params;
  const auto n_left = static_cast<long>(std::ceil(-s_lo / spacing));
  const auto n_right = static_cast<long>(std::ceil(s_hi / spacing));
  for (long i = n_left; i >= 1; --i) params.push_back(s_lo * static_cast<double>(i) / static_cast<double>(n_left));
  params.push_back(0.0);
  for (long i = 1; i <= n_right; ++i) params.push_back(s_hi * static_cast<double>(i) / static_cast<double>(n_right));
  return from_params(origin, direction, std::move(params));
}

LeafPolyline LeafPolyline::from_params(const TorusPoint& origin, const Vec& direction, std::vector<double> params) {
  require_same_dimension(origin.dimension(), static_cast<int>(direction.size()), "LeafPolyline");
  const double norm = direction.norm();
  if (!(norm > 0.0)) throw ContractViolation("LeafPolyline: zero direction");
  if (!std::is_sorted(params.begin(), params.end())) throw ContractViolation("LeafPolyline: parameters must be sorted");
  auto zero = std::find(params.begin(), params.end(), 0.0);
  if (zero == params.end()) throw ContractViolation("LeafPolyline: parameter 0 must be a vertex");

  LeafPolyline leaf;
  leaf.dim_ = origin.dimension();
  leaf.origin_ = origin;
  leaf.direction_ = direction / norm;
  leaf.base_ = static_cast<std::size_t>(zero - params.begin());
  leaf.params_ = std::move(params);
  const auto d = static_cast<std::size_t>(leaf.dim_);
  leaf.coords_.resize(leaf.params_.size() * d);
  leaf.offsets_.resize(leaf.params_.size() * d);
  for (std::size_t v = 0; v < leaf.params_.size(); ++v) {
    for (std::size_t i = 0; i < d; ++i) {
      const double x = origin[static_cast<int>(i)] + leaf.params_[v] * leaf.direction_[static_cast<Eigen::Index>(i)];
      const double fl = std::floor(x);
      double frac = x - fl;
      auto k = static_cast<std::int64_t>(fl);
      if (frac >= 1.0) {
        frac = 0.0;
        ++k;
      }
      leaf.coords_[v * d + i] = frac;
      leaf.offsets_[v * d + i] = k;
    }
  }
  leaf.rebuild_arclength();
  return leaf;
}

TorusPoint LeafPolyline::point(std::size_t i) const {
  return TorusPoint(Vec(Eigen::Map<const Vec>(coords_.data() + i * static_cast<std::size_t>(dim_), dim_)));
}

Vec LeafPolyline::lifted(std::size_t i) const {
  Vec v(dim_);
  const auto d = static_cast<std::size_t>(dim_);
  for (std::size_t k = 0; k < d; ++k) v[static_cast<Eigen::Index>(k)] = coords_[i * d + k] + static_cast<double>(offsets_[i * d + k]);
  return v;
}

Vec LeafPolyline::segment_vector(std::size_t i) const {
  Vec v(dim_);
  const auto d = static_cast<std::size_t>(dim_);
  for (std::size_t k = 0; k < d; ++k) {
    v[static_cast<Eigen::Index>(k)] = (coords_[(i + 1) * d + k] - coords_[i * d + k]) +
                                      static_cast<double>(offsets_[(i + 1) * d + k] - offsets_[i * d + k]);
  }
  return v;
}

void LeafPolyline::rebuild_arclength() {
  cumulative_.assign(params_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < params_.size(); ++i) cumulative_[i + 1] = cumulative_[i] + segment_vector(i).norm();
}

double LeafPolyline::max_gap() const {
  double g = 0.0;
  for (std::size_t i = 0; i + 1 < params_.size(); ++i) g = std::max(g, cumulative_[i + 1] - cumulative_[i]);
  return g;
}

void LeafPolyline::evaluate(const TorusMap& map, double s, double* coords, std::int64_t* offset) const {
  for (int i = 0; i < dim_; ++i) {
    const double x = origin_[i] + s * direction_[i];
    const double fl = std::floor(x);
    double frac = x - fl;
    auto k = static_cast<std::int64_t>(fl);
    if (frac >= 1.0) {
      frac = 0.0;
      ++k;
    }
    coords[i] = frac;
    offset[i] = k;
  }
  for (int j = 0; j < steps_; ++j) step_lifted(map, coords, offset);
}

Vec LeafPolyline::lifted_at_arclength(double a, double* param_out) const {
  if (params_.empty()) throw ContractViolation("LeafPolyline: empty");
  if (params_.size() == 1 || a <= 0.0) {
    if (param_out) *param_out = params_.front();
    return lifted(0);
  }
  if (a >= length()) {
    if (param_out) *param_out = params_.back();
    return lifted(params_.size() - 1);
  }
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), a);
  const auto i = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  const double seg = cumulative_[i + 1] - cumulative_[i];
  const double f = seg > 0.0 ? (a - cumulative_[i]) / seg : 0.0;
  if (param_out) *param_out = params_[i] + f * (params_[i + 1] - params_[i]);
  return lifted(i) + f * segment_vector(i);
}

LeafPolyline LeafPolyline::restricted(const TorusMap& map, double s_lo, double s_hi) const {
  if (!(s_lo <= 0.0 && 0.0 <= s_hi)) throw ContractViolation("LeafPolyline::restricted: interval must contain 0");
  LeafPolyline out;
  out.dim_ = dim_;
  out.steps_ = steps_;
  out.origin_ = origin_;
  out.direction_ = direction_;
  const auto d = static_cast<std::size_t>(dim_);
  std::vector<double> c(d);
  std::vector<std::int64_t> k(d);
  auto push_eval = [&](double s) {
    evaluate(map, s, c.data(), k.data());
    out.params_.push_back(s);
    out.coords_.insert(out.coords_.end(), c.begin(), c.end());
    out.offsets_.insert(out.offsets_.end(), k.begin(), k.end());
  };
  if (s_lo < params_.front() || s_hi > params_.back()) throw ContractViolation("LeafPolyline::restricted: interval exceeds leaf");
  push_eval(s_lo);
  for (std::size_t v = 0; v < params_.size(); ++v) {
    if (params_[v] <= s_lo || params_[v] >= s_hi) continue;
    out.params_.push_back(params_[v]);
    out.coords_.insert(out.coords_.end(), coords_.begin() + static_cast<std::ptrdiff_t>(v * d),
                       coords_.begin() + static_cast<std::ptrdiff_t>((v + 1) * d));
    out.offsets_.insert(out.offsets_.end(), offsets_.begin() + static_cast<std::ptrdiff_t>(v * d),
                        offsets_.begin() + static_cast<std::ptrdiff_t>((v + 1) * d));
  }
  if (s_hi > s_lo) push_eval(s_hi);
  auto zero = std::find(out.params_.begin(), out.params_.end(), 0.0);
  if (zero == out.params_.end()) throw ContractViolation("LeafPolyline::restricted: basepoint lost");
  out.base_ = static_cast<std::size_t>(zero - out.params_.begin());
  out.rebuild_arclength();
  return out;
}

namespace {

struct Builder {
  const TorusMap& map;
  const LeafPolyline& leaf;  // carries the seed and the current step count
  double eps;
  std::size_t cap;
  int step_index;
  std::size_t d;
  std::vector<double> params, coords;
  std::vector<std::int64_t> offsets;

  void push(double s, const double* c, const std::int64_t* k) {
    if (params.size() >= cap) {
      throw ResourceError("grow_leaf: vertex cap " + std::to_string(cap) + " exceeded at step " + std::to_string(step_index));
    }
    params.push_back(s);
    coords.insert(coords.end(), c, c + d);
    offsets.insert(offsets.end(), k, k + d);
  }

  double gap(const double* ca, const std::int64_t* ka, const double* cb, const std::int64_t* kb) const {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double v = (cb[i] - ca[i]) + static_cast<double>(kb[i] - ka[i]);
      s += v * v;
    }
    return std::sqrt(s);
  }

  // Inserts refinement vertices strictly between a and b (neither pushed here).
  void refine(double sa, const double* ca, const std::int64_t* ka, double sb, const double* cb, const std::int64_t* kb,
              int depth) {
    if (gap(ca, ka, cb, kb) <= eps) return;
    const double sm = 0.5 * (sa + sb);
    if (depth > 60 || !(sm > sa && sm < sb)) throw Error("grow_leaf: refinement stalled (map not continuous along leaf?)");
    std::vector<double> cm(d);
    std::vector<std::int64_t> km(d);
    leaf.evaluate(map, sm, cm.data(), km.data());
    refine(sa, ca, ka, sm, cm.data(), km.data(), depth + 1);
    push(sm, cm.data(), km.data());
    refine(sm, cm.data(), km.data(), sb, cb, kb, depth + 1);
  }
};

}  // namespace

namespace {

// Rebuilds cur's vertex list with refinement vertices wherever a gap exceeds eps.
void refine_in_place(const TorusMap& map, LeafPolyline& cur, double eps, std::size_t cap, int step_index,
                     std::vector<double>& params, std::vector<double>& coords, std::vector<std::int64_t>& offsets,
                     std::size_t& base) {
  const auto d = static_cast<std::size_t>(cur.dimension());
  Builder b{map, cur, eps, cap, step_index, d, {}, {}, {}};
  b.params.reserve(params.size() * 3);
  std::size_t new_base = 0;
  for (std::size_t v = 0; v < params.size(); ++v) {
    if (v > 0) {
      b.refine(params[v - 1], coords.data() + (v - 1) * d, offsets.data() + (v - 1) * d, params[v],
               coords.data() + v * d, offsets.data() + v * d, 0);
    }
    if (v == base) new_base = b.params.size();
    b.push(params[v], coords.data() + v * d, offsets.data() + v * d);
  }
  params = std::move(b.params);
  coords = std::move(b.coords);
  offsets = std::move(b.offsets);
  base = new_base;
}

}  // namespace

LeafPolyline grow_leaf(const TorusMap& map, const LeafPolyline& leaf, int steps, double eps_geom, std::size_t vertex_cap) {
  if (steps < 0) throw ContractViolation("grow_leaf: steps must be >= 0");
  if (!(eps_geom > 0.0)) throw ContractViolation("grow_leaf: eps_geom must be positive");
  require_same_dimension(map.dimension(), leaf.dimension(), "grow_leaf");
  LeafPolyline cur = leaf;
  const auto d = static_cast<std::size_t>(cur.dim_);
  for (int st = 0; st < steps; ++st) {
    for (std::size_t v = 0; v < cur.params_.size(); ++v) step_lifted(map, cur.coords_.data() + v * d, cur.offsets_.data() + v * d);
    cur.steps_ += 1;
    refine_in_place(map, cur, eps_geom, vertex_cap, cur.steps_, cur.params_, cur.coords_, cur.offsets_, cur.base_);
  }
  cur.rebuild_arclength();
  return cur;
}

LeafPolyline refine_leaf(const TorusMap& map, const LeafPolyline& leaf, double eps_geom, std::size_t vertex_cap) {
  if (!(eps_geom > 0.0)) throw ContractViolation("refine_leaf: eps_geom must be positive");
  require_same_dimension(map.dimension(), leaf.dimension(), "refine_leaf");
  LeafPolyline cur = leaf;
  refine_in_place(map, cur, eps_geom, vertex_cap, cur.steps_, cur.params_, cur.coords_, cur.offsets_, cur.base_);
  cur.rebuild_arclength();
  return cur;
}

}  // namespace toralent
