#include "toralent/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>

#include "toralent/parallel.hpp"

namespace toralent {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

class Stopwatch {
public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// NaN has no JSON spelling; it is written as null and read back as NaN.
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }
double num_of(const Json& j) { return j.is_number() ? j.get<double>() : kNaN; }

Json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Json curve_json(const GrowthCurve& c) {
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back({num(p.n), num(p.value)});
  const auto& f = c.fit;
  return {{"points", pts},
          {"fit",
           {{"slope", num(f.slope)},
            {"intercept", num(f.intercept)},
            {"residual_rms", num(f.residual_rms)},
            {"n_min", num(f.n_min)},
            {"n_max", num(f.n_max)},
            {"points_used", f.points_used}}}};
}

Json estimate_json(const EntropyEstimate& e) {
  Json curves = Json::array();
  for (const auto& c : e.curves) curves.push_back({{"eps", c.eps}, {"curve", curve_json(c.curve)}});
  return {{"value", num(e.value)},
          {"non_converged", e.non_converged},
          {"plateau_index", e.plateau_index},
          {"slope_spread", num(e.slope_spread)},
          {"curves", curves}};
}

double estimate_residual(const EntropyEstimate& e) {
  if (e.curves.empty()) return kNaN;
  const auto i = e.plateau_index >= 0 ? static_cast<std::size_t>(e.plateau_index) : e.curves.size() - 1;
  return e.curves[i].curve.fit.residual_rms;
}

ResultRecord make_record(const ExperimentConfig& cfg, const std::string& op, double t, const std::string& quantity) {
  ResultRecord r;
  r.experiment_id = cfg.experiment_id;
  r.config_hash = config_hash(cfg);
  r.operation = op;
  r.inputs = {{"t", num(t)}, {"quantity", quantity}};
  return r;
}

void set_result(ResultRecord& r, double value, double residual, Json flags = Json::array()) {
  r.outputs["value"] = num(value);
  r.outputs["residual"] = num(residual);
  r.outputs["flags"] = std::move(flags);
}

double expanding_eigenvalue(const SpectralSplitting& s) {
  double lam = 0.0;
  for (const auto& e : s.eigenvalues) lam = std::max(lam, static_cast<double>(e.modulus));
  return lam;
}

std::vector<LeafPolyline> ueg_leaves(const TorusMap& map, const ExperimentConfig& cfg, std::uint64_t seed) {
  std::vector<LeafPolyline> leaves;
  for (const auto& x : halton_torus_points(cfg.dimension(), static_cast<std::size_t>(cfg.ueg.basepoints), seed))
    leaves.push_back(unstable_leaf(map, x, cfg.ueg.delta, cfg.ueg.eps_geom));
  return leaves;
}

Json ueg_json(const UegCertificate& c, double h_ref) {
  Json w = Json::array();
  for (const auto& p : c.witnesses) w.push_back(vec_json(p.coords()));
  return {{"certificate", "sampled-UEG"},
          {"N", c.N},
          {"count", c.count},
          {"required", num(c.required)},
          {"pass", c.pass},
          {"h_ref", num(h_ref)},
          {"argmin", c.argmin},
          {"per_basepoint", c.per_basepoint},
          {"witnesses", w}};
}

SeparatedSchedule entropy_schedule(const ExperimentConfig& cfg, std::uint64_t seed, int threads) {
  SeparatedSchedule s = cfg.entropy;
  s.seed = seed;
  s.threads = threads;
  return s;
}

}  // namespace

Json ResultRecord::to_json() const {
  return {{"experiment_id", experiment_id}, {"config_hash", config_hash}, {"operation", operation}, {"inputs", inputs},
          {"outputs", outputs},             {"wall_time", wall_time},     {"version", version}};
}

ResultRecord ResultRecord::from_json(const Json& j) {
  ResultRecord r;
  try {
    r.experiment_id = j.at("experiment_id").get<std::string>();
    r.config_hash = j.at("config_hash").get<std::string>();
    r.operation = j.at("operation").get<std::string>();
    r.inputs = j.at("inputs");
    r.outputs = j.at("outputs");
    r.wall_time = num_of(j.at("wall_time"));
    r.version = j.at("version").get<std::string>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed result record: ") + e.what());
  }
  return r;
}

std::string ResultRecord::to_line() const { return to_json().dump(); }

bool ResultRecord::has_flag(const std::string& flag) const {
  if (!outputs.contains("flags")) return false;
  for (const auto& f : outputs["flags"])
    if (f == flag) return true;
  return false;
}

std::unique_ptr<TorusMap> make_map(const ExperimentConfig& cfg, double t) {
  if (t == 0.0) return std::make_unique<LinearTorusMap>(cfg.matrix.entries());
  return std::make_unique<PerturbedMap>(cfg.matrix, cfg.field(), t);
}

ResultRecord run_classify(const ExperimentConfig& cfg) {
  Stopwatch clock;
  auto r = make_record(cfg, "classify", 0.0, "exact_entropy");
  r.inputs["matrix"] = canonical_json(cfg)["matrix"];
  const auto split = spectral_split(cfg.matrix);
  const auto cls = classify(cfg.matrix, split);
  Json eig = Json::array();
  for (const auto& e : split.eigenvalues)
    eig.push_back({{"re", e.value.real()},
                   {"im", e.value.imag()},
                   {"modulus", static_cast<double>(e.modulus)},
                   {"multiplicity", e.multiplicity},
                   {"kind", e.kind == Stability::unstable ? "unstable" : e.kind == Stability::stable ? "stable" : "center"}});
  Json poly = Json::array();
  for (const auto& c : split.charpoly.descending()) poly.push_back(c.str());
  const double h = exact_entropy(split);
  set_result(r, h, 0.0, Json::array({to_string(cls.kind), cls.ergodic ? "ergodic" : "non_ergodic"}));
  r.outputs["class"] = to_string(cls.kind);
  r.outputs["ergodic"] = cls.ergodic;
  r.outputs["dim_u"] = cls.dim_u;
  r.outputs["dim_c"] = cls.dim_c;
  r.outputs["dim_s"] = cls.dim_s;
  r.outputs["cyclotomic_orders"] = cls.cyclotomic_orders;
  r.outputs["charpoly_descending"] = poly;
  r.outputs["eigenvalues"] = eig;
  r.outputs["exact_entropy"] = h;
  r.wall_time = clock.seconds();
  return r;
}

ResultRecord run_entropy(const ExperimentConfig& cfg, int threads) {
  Stopwatch clock;
  auto r = make_record(cfg, "entropy", cfg.amplitude, "h_top");
  const auto map = make_map(cfg, cfg.amplitude);
  const auto est = estimate_topological_entropy(*map, entropy_schedule(cfg, cfg.seed, threads));
  set_result(r, est.value, estimate_residual(est), est.non_converged ? Json::array({"non_converged"}) : Json::array());
  r.outputs["estimate"] = estimate_json(est);
  r.outputs["exact_entropy"] = exact_entropy(cfg.matrix);
  r.wall_time = clock.seconds();
  return r;
}

ResultRecord run_uentropy(const ExperimentConfig& cfg, int threads) {
  Stopwatch clock;
  auto r = make_record(cfg, "uentropy", cfg.amplitude, "h_u");
  const auto map = make_map(cfg, cfg.amplitude);
  UnstableSchedule s = cfg.uentropy.schedule;
  s.threads = threads;
  s.vertex_cap = cfg.vertex_cap;
  const auto xs = halton_torus_points(cfg.dimension(), static_cast<std::size_t>(cfg.uentropy.points), cfg.seed);
  const auto est = estimate_unstable_entropy(*map, xs, cfg.uentropy.delta, s);
  set_result(r, est.estimate.value, estimate_residual(est.estimate),
             est.estimate.non_converged ? Json::array({"non_converged"}) : Json::array());
  r.outputs["estimate"] = estimate_json(est.estimate);
  r.outputs["argsup"] = est.argsup;
  r.outputs["per_point"] = est.per_point;
  r.outputs["exact_entropy"] = exact_entropy(cfg.matrix);
  r.wall_time = clock.seconds();
  return r;
}

ResultRecord run_uvol(const ExperimentConfig& cfg) {
  Stopwatch clock;
  auto r = make_record(cfg, "uvol", cfg.amplitude, "chi_u");
  const auto map = make_map(cfg, cfg.amplitude);
  const VolumeGrowthOptions o{cfg.volume.fit_min, cfg.volume.fit_max, cfg.vertex_cap};
  const auto curve = estimate_unstable_volume_growth(*map, cfg.basepoint(), cfg.volume.delta, cfg.volume.n_max,
                                                     cfg.volume.eps_geom, o);
  set_result(r, curve.fit.slope, curve.fit.residual_rms);
  r.outputs["curve"] = curve_json(curve);
  r.outputs["exact_entropy"] = exact_entropy(cfg.matrix);
  r.wall_time = clock.seconds();
  return r;
}

ResultRecord run_center_growth(const ExperimentConfig& cfg) {
  Stopwatch clock;
  auto r = make_record(cfg, "center-growth", cfg.amplitude, "center_growth");
  const auto map = make_map(cfg, cfg.amplitude);
  CenterGrowthOptions o = cfg.center.options;
  o.seed = cfg.seed;
  const auto g = center_growth_profile(*map, spectral_split(cfg.matrix), cfg.center.horizon,
                                       static_cast<std::size_t>(cfg.center.samples), o);
  set_result(r, g.fitted_eps, g.curve.points.empty() ? kNaN : g.curve.fit.residual_rms, Json::array({to_string(g.verdict)}));
  r.outputs["verdict"] = to_string(g.verdict);
  r.outputs["curve"] = curve_json(g.curve);
  r.outputs["bound_k"] = num(g.bound_k);
  r.outputs["sup_first_half"] = num(g.sup_first_half);
  r.outputs["sup_second_half"] = num(g.sup_second_half);
  r.outputs["fitted_c"] = num(g.fitted_c);
  r.outputs["fitted_eps"] = num(g.fitted_eps);
  r.outputs["frame_proxy"] = g.frame_proxy;
  r.wall_time = clock.seconds();
  return r;
}

ResultRecord run_density(const ExperimentConfig& cfg) {
  Stopwatch clock;
  auto r = make_record(cfg, "density", 0.0, "density_slope");
  const auto split = spectral_split(cfg.matrix);
  const double tau = cfg.density.tau > 0 ? cfg.density.tau : expanding_eigenvalue(split);
  const auto p = effective_density_profile(cfg.matrix, cfg.basepoint(), tau, cfg.density.n_min, cfg.density.n_max,
                                           cfg.density.options);
  bool monotone = true;
  for (std::size_t i = 1; i < p.radius.size(); ++i) monotone = monotone && p.radius[i] <= p.radius[i - 1] + p.probe_error[i];
  set_result(r, p.curve.fit.slope, p.curve.fit.residual_rms, Json::array({to_string(p.method), monotone ? "monotone" : "non_monotone"}));
  r.inputs["tau"] = tau;
  r.outputs["n"] = p.n;
  Json radii = Json::array();
  for (double x : p.radius) radii.push_back(num(x));
  r.outputs["radius"] = radii;
  r.outputs["probe_error"] = p.probe_error;
  r.outputs["curve"] = curve_json(p.curve);
  r.outputs["method"] = to_string(p.method);
  r.wall_time = clock.seconds();
  return r;
}

ResultRecord run_rect_hit(const ExperimentConfig& cfg) {
  Stopwatch clock;
  auto r = make_record(cfg, "rect-hit", cfg.amplitude, "minimal_hitting_k");
  const auto map = make_map(cfg, cfg.amplitude);
  const auto split = spectral_split(cfg.matrix);
  double c_eps = 1.0;
  if (split.dim_c() > 0) {
    CenterGrowthOptions o = cfg.center.options;
    o.seed = cfg.seed;
    c_eps = center_growth_profile(*map, split, cfg.center.horizon, static_cast<std::size_t>(cfg.center.samples), o).fitted_c;
  }
  const TorusPoint x0 = cfg.rect.x0 ? TorusPoint(Eigen::Map<const Vec>(cfg.rect.x0->data(), static_cast<Eigen::Index>(cfg.rect.x0->size())))
                                    : cfg.basepoint();
  const Rectangle rect{x0, cfg.rect.n, cfg.rect.eps, cfg.rect.delta, c_eps};
  const auto leaf = unstable_leaf(*map, cfg.basepoint(), cfg.rect.delta, cfg.rect.eps_geom);
  const int k = minimal_hitting_k(*map, split, leaf, rect, cfg.rect.k_max, cfg.rect.eps_geom, cfg.vertex_cap);
  set_result(r, k > 0 ? k : kNaN, 0.0, Json::array({k > 0 ? "hit" : "miss"}));
  r.outputs["c_eps"] = c_eps;
  r.outputs["center_stable_radius"] = rect.center_stable_radius();
  if (k > 0) {
    const auto hit = rectangle_hit(*map, split, leaf, rect, k, cfg.rect.eps_geom, cfg.vertex_cap);
    r.outputs["y"] = vec_json(hit.y.coords());
    r.outputs["arclength"] = hit.arclength;
  }
  r.wall_time = clock.seconds();
  return r;
}

ResultRecord run_ueg(const ExperimentConfig& cfg) {
  Stopwatch clock;
  auto r = make_record(cfg, "ueg-cert", cfg.amplitude, "ueg");
  const auto map = make_map(cfg, cfg.amplitude);
  double h_ref = exact_entropy(cfg.matrix);
  if (cfg.ueg.h_ref == "value")
    h_ref = cfg.ueg.h_ref_value;
  else if (cfg.ueg.h_ref == "estimate" && cfg.amplitude > 0)
    h_ref = estimate_topological_entropy(*map, entropy_schedule(cfg, cfg.seed, 1)).value;
  const auto leaves = ueg_leaves(*map, cfg, cfg.seed);
  const auto cert = cfg.ueg.n > 0
                        ? ueg_certificate(*map, cfg.ueg.rho, cfg.ueg.delta, h_ref, cfg.ueg.n, leaves, cfg.ueg.eps_geom, cfg.vertex_cap)
                        : ueg_certificate_search(*map, cfg.ueg.rho, cfg.ueg.delta, h_ref, cfg.ueg.n_max, leaves,
                                                 cfg.ueg.eps_geom, cfg.vertex_cap);
  set_result(r, static_cast<double>(cert.count), 0.0, Json::array({cert.pass ? "pass" : "fail"}));
  const Json details = ueg_json(cert, h_ref);
  for (const auto& [k, v] : details.items()) r.outputs[k] = v;
  r.wall_time = clock.seconds();
  return r;
}

ResultRecord run_mixing(const ExperimentConfig& cfg) {
  Stopwatch clock;
  auto r = make_record(cfg, "mixing", 0.0, "mixing_alpha");
  const auto& m = cfg.mixing;
  const auto phi = make_observable(m.phi, cfg.dimension());
  const auto psi = make_observable(m.psi, cfg.dimension());
  const auto est = mixing_decay_estimate(cfg.matrix, cfg.basepoint(), m.delta, phi, psi, m.n_min, m.n_max, m.options);
  set_result(r, est.indeterminate ? kNaN : est.alpha_fit, est.indeterminate ? kNaN : est.residual,
             est.indeterminate ? Json::array({"indeterminate"}) : Json::array());
  Json pts = Json::array();
  for (const auto& p : est.points) pts.push_back({{"n", p.n}, {"d_n", num(p.d_n)}, {"floor", num(p.floor)}, {"used", p.used}});
  r.outputs["points"] = pts;
  r.outputs["phi_integral"] = num(est.phi_integral);
  r.outputs["phi_integral_error"] = num(est.phi_integral_error);
  r.outputs["psi_leaf_integral"] = num(est.psi_leaf_integral);
  if (!est.indeterminate) r.outputs["curve"] = curve_json(est.curve);
  r.wall_time = clock.seconds();
  return r;
}

std::size_t expected_sweep_records(const ExperimentConfig& cfg) {
  const auto& q = cfg.quantities;
  auto has = [&](const char* s) { return std::find(q.begin(), q.end(), s) != q.end(); };
  return cfg.amplitudes().size() * q.size() + (has("chi_u") ? 1 : 0) + (has("ruelle") ? 1 : 0);
}

std::vector<ResultRecord> run_sweep(const ExperimentConfig& cfg, int threads) {
  const auto ladder = cfg.amplitudes();
  const auto& quantities = cfg.quantities;
  auto wants = [&](const std::string& s) { return std::find(quantities.begin(), quantities.end(), s) != quantities.end(); };
  const auto split = spectral_split(cfg.matrix);
  const double exact = exact_entropy(split);
  const LinearTorusMap base_map(cfg.matrix.entries());

  // One N for the whole ladder: the configured one, or the first passing N of the unperturbed map.
  int ueg_n = cfg.ueg.n;
  bool ueg_n_found = true;
  if (wants("ueg") && ueg_n == 0) {
    const double h = cfg.ueg.h_ref == "value" ? cfg.ueg.h_ref_value : exact;
    const auto cert = ueg_certificate_search(base_map, cfg.ueg.rho, cfg.ueg.delta, h, cfg.ueg.n_max,
                                             ueg_leaves(base_map, cfg, cfg.seed), cfg.ueg.eps_geom, cfg.vertex_cap);
    ueg_n = cert.N;
    ueg_n_found = cert.pass;
  }

  std::vector<std::vector<ResultRecord>> per_point(ladder.size());
  parallel_for(ladder.size(), threads, [&](std::size_t i) {
    const double t = ladder[i];
    const std::uint64_t seed = cfg.seed ^ static_cast<std::uint64_t>(i);
    std::vector<ResultRecord> out;
    auto start = [&](const std::string& q) {
      auto r = make_record(cfg, "sweep", t, q);
      r.inputs["index"] = i;
      r.inputs["seed"] = seed;
      return r;
    };
    try {
      const auto map = make_map(cfg, t);
      double h_top = kNaN;
      for (const auto& q : quantities) {
        Stopwatch clock;
        auto r = start(q);
        if (q == "c1") {
          set_result(r, c1_distance_estimate(*map, base_map, static_cast<std::size_t>(cfg.c1_samples), seed), 0.0);
          if (const auto* p = dynamic_cast<const PerturbedMap*>(map.get())) r.outputs["c1_upper_bound"] = p->c1_upper_bound();
        } else if (q == "chi_u") {
          const VolumeGrowthOptions o{cfg.volume.fit_min, cfg.volume.fit_max, cfg.vertex_cap};
          const auto c = estimate_unstable_volume_growth(*map, cfg.basepoint(), cfg.volume.delta, cfg.volume.n_max,
                                                         cfg.volume.eps_geom, o);
          set_result(r, c.fit.slope, c.fit.residual_rms);
          r.outputs["curve"] = curve_json(c);
        } else if (q == "h_top") {
          const auto est = estimate_topological_entropy(*map, entropy_schedule(cfg, seed, 1));
          h_top = est.value;
          set_result(r, est.value, estimate_residual(est), est.non_converged ? Json::array({"non_converged"}) : Json::array());
          r.outputs["estimate"] = estimate_json(est);
        } else if (q == "ruelle") {
          set_result(r, ruelle_upper_bound(*map, split, cfg.ruelle.horizon, static_cast<std::size_t>(cfg.ruelle.samples), seed),
                     0.0);
          r.outputs["exact_entropy"] = exact;
        } else if (q == "ueg") {
          double h_ref = exact;
          if (cfg.ueg.h_ref == "value") {
            h_ref = cfg.ueg.h_ref_value;
          } else if (cfg.ueg.h_ref == "estimate" && t > 0) {
            if (std::isnan(h_top)) h_top = estimate_topological_entropy(*map, entropy_schedule(cfg, seed, 1)).value;
            h_ref = h_top;
          }
          const auto cert = ueg_certificate(*map, cfg.ueg.rho, cfg.ueg.delta, h_ref, ueg_n, ueg_leaves(*map, cfg, seed),
                                            cfg.ueg.eps_geom, cfg.vertex_cap);
          Json flags = Json::array({cert.pass ? "pass" : "fail"});
          if (!ueg_n_found) flags.push_back("no_passing_N_at_t0");
          set_result(r, static_cast<double>(cert.count), 0.0, flags);
          const Json details = ueg_json(cert, h_ref);
          for (const auto& [k, v] : details.items()) r.outputs[k] = v;
        }
        r.wall_time = clock.seconds();
        out.push_back(std::move(r));
      }
    } catch (const Error& e) {
      out.clear();
      const bool resource = dynamic_cast<const ResourceError*>(&e) != nullptr;
      for (const auto& q : quantities) {
        auto r = start(q);
        set_result(r, kNaN, kNaN, Json::array({"failed", resource ? "resource" : "error"}));
        r.outputs["error"] = e.what();
        out.push_back(std::move(r));
      }
    }
    per_point[i] = std::move(out);
  });

  std::vector<ResultRecord> records;
  for (const auto& v : per_point)
    for (const auto& r : v) records.push_back(r);

  auto value_of = [&](std::size_t point, const std::string& q) {
    for (const auto& r : per_point[point])
      if (r.inputs["quantity"] == q) return num_of(r.outputs["value"]);
    return kNaN;
  };
  auto summary = [&](const std::string& q, double value, Json flags) {
    auto r = make_record(cfg, "sweep_summary", kNaN, q);
    set_result(r, value, 0.0, std::move(flags));
    return r;
  };

  if (wants("chi_u")) {
    Stopwatch clock;
    std::size_t ref = ladder.size();
    for (std::size_t i = 0; i < ladder.size() && ref == ladder.size(); ++i)
      if (ladder[i] == 0.0) ref = i;
    double chi0 = kNaN;
    if (ref < ladder.size()) {
      chi0 = value_of(ref, "chi_u");
    } else {
      const VolumeGrowthOptions o{cfg.volume.fit_min, cfg.volume.fit_max, cfg.vertex_cap};
      chi0 = estimate_unstable_volume_growth(base_map, cfg.basepoint(), cfg.volume.delta, cfg.volume.n_max, cfg.volume.eps_geom, o)
                 .fit.slope;
    }
    double dev = 0.0;
    bool any_failed = std::isnan(chi0);
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      const double v = value_of(i, "chi_u");
      if (std::isnan(v))
        any_failed = true;
      else
        dev = std::max(dev, std::abs(v - chi0));
    }
    auto r = summary("chi_u_max_deviation", std::isnan(chi0) ? kNaN : dev,
                     any_failed ? Json::array({"incomplete"}) : Json::array());
    r.outputs["chi_u_t0"] = num(chi0);
    r.wall_time = clock.seconds();
    records.push_back(std::move(r));
  }
  if (wants("ruelle")) {
    double excess = -HUGE_VAL;
    bool any_failed = false;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      const double v = value_of(i, "ruelle");
      if (std::isnan(v))
        any_failed = true;
      else
        excess = std::max(excess, v - exact);
    }
    auto r = summary("ruelle_max_excess", std::isinf(excess) ? kNaN : excess,
                     any_failed ? Json::array({"incomplete"}) : Json::array());
    r.outputs["exact_entropy"] = exact;
    records.push_back(std::move(r));
  }
  return records;
}

void append_records(const std::string& path, const std::vector<ResultRecord>& records) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw OutputError(path + ": cannot open for writing");
  for (const auto& r : records) out << r.to_line() << '\n';
  if (!out) throw OutputError(path + ": write failed");
}

std::vector<ResultRecord> load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::vector<ResultRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(ResultRecord::from_json(Json::parse(line)));
    } catch (const Json::parse_error& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void verify_records(const std::vector<ResultRecord>& records, const std::string& expected_hash) {
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].config_hash != expected_hash)
      throw ConfigError("record " + std::to_string(i) + " (" + records[i].operation + ") carries config hash " +
                        records[i].config_hash + ", expected " + expected_hash);
}

}  // namespace toralent
