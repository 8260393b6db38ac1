#include "toralent/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace toralent {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

// Reads keys from one JSON object and rejects any key it was not asked about.
class Section {
public:
  Section(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const Json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  std::string at(const std::string& key) const { return path_ + "." + key; }

  double number(const std::string& key, double def, double lo = -HUGE_VAL, double hi = HUGE_VAL) {
    if (!has(key)) return def;
    const Json& v = j_.at(key);
    if (!v.is_number()) fail(at(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x) || x < lo || x > hi) fail(at(key), "value " + v.dump() + " out of range [" + fmt(lo) + ", " + fmt(hi) + "]");
    return x;
  }

  // Strictly positive number.
  double positive(const std::string& key, double def) {
    const double x = number(key, def);
    if (!(x > 0)) fail(at(key), "must be positive");
    return x;
  }

  long long integer(const std::string& key, long long def, long long lo, long long hi) {
    if (!has(key)) return def;
    const Json& v = j_.at(key);
    if (!v.is_number_integer()) fail(at(key), "expected an integer");
    const auto x = v.get<long long>();
    if (x < lo || x > hi) fail(at(key), "value " + std::to_string(x) + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
  }

  std::string string(const std::string& key, const std::string& def, const std::vector<std::string>& allowed = {}) {
    if (!has(key)) return def;
    const Json& v = j_.at(key);
    if (!v.is_string()) fail(at(key), "expected a string");
    const auto s = v.get<std::string>();
    if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail(at(key), "\"" + s + "\" is not one of: " + list);
    }
    return s;
  }

  std::vector<double> numbers(const std::string& key, const std::vector<double>& def) {
    if (!has(key)) return def;
    return number_list(j_.at(key), at(key));
  }

  Section child(const std::string& key) {
    static const Json empty = Json::object();
    if (!has(key)) return Section(empty, at(key));
    return Section(j_.at(key), at(key));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) fail(at(it.key()), "unknown key");
  }

  static std::vector<double> number_list(const Json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) fail(path + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

private:
  static std::string fmt(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream s;
    s << x;
    return s.str();
  }

  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::vector<double> point_of(const Json& v, int dim, const std::string& path) {
  auto p = Section::number_list(v, path);
  if (static_cast<int>(p.size()) != dim) fail(path, "expected " + std::to_string(dim) + " coordinates");
  for (double c : p)
    if (c < 0 || c >= 1) fail(path, "coordinates must lie in [0, 1)");
  return p;
}

Vec to_vec(const std::vector<double>& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

std::vector<double> from_vec(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

IntegerAutomorphism parse_matrix(const Json& v) {
  if (v.is_string()) {
    try {
      return IntegerAutomorphism::parse(v.get<std::string>());
    } catch (const Error& e) {
      fail("config.matrix", e.what());
    }
  }
  if (!v.is_array() || v.empty()) fail("config.matrix", "expected a non-empty array of integer rows");
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = "config.matrix[" + std::to_string(i) + "]";
    if (!v[i].is_array()) fail(p, "expected an array of integers");
    std::vector<std::int64_t> row;
    for (const auto& e : v[i]) {
      if (!e.is_number_integer()) fail(p, "expected integers");
      row.push_back(e.get<std::int64_t>());
    }
    rows.push_back(std::move(row));
  }
  try {
    return IntegerAutomorphism::from_rows(rows);
  } catch (const Error& e) {
    fail("config.matrix", e.what());
  }
}

Json observable_defaults(const Json& spec, int dim, const std::string& path) {
  // Validates by construction and returns the entry with defaults filled in.
  Section s(spec, path);
  const std::string type = s.string("type", "", {"bump", "product", "constant"});
  if (type.empty()) fail(s.at("type"), "required");
  Json out{{"type", type}};
  if (type == "constant") {
    out["value"] = s.number("value", 0.0);
  } else if (type == "bump") {
    if (!s.has("center")) fail(s.at("center"), "required");
    out["center"] = point_of(s.raw("center"), dim, s.at("center"));
    out["radius"] = s.positive("radius", 0.1);
    out["margin"] = s.positive("margin", 0.1);
    out["order"] = s.integer("order", 1, 0, 64);
    out["r0"] = s.positive("r0", 0.25);
  } else {
    if (!s.has("factors")) fail(s.at("factors"), "required");
    const Json& fs = s.raw("factors");
    if (!fs.is_array() || fs.empty()) fail(s.at("factors"), "expected a non-empty array");
    out["factors"] = Json::array();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      Section f(fs[i], s.at("factors") + "[" + std::to_string(i) + "]");
      Json fj;
      fj["axis"] = f.integer("axis", 0, 0, dim - 1);
      fj["center"] = f.number("center", 0.5, 0.0, 1.0);
      fj["radius"] = f.positive("radius", 0.1);
      fj["margin"] = f.positive("margin", 0.1);
      f.finish();
      out["factors"].push_back(fj);
    }
    out["order"] = s.integer("order", 1, 0, 64);
  }
  out["scale"] = s.number("scale", 1.0);
  out["offset"] = s.number("offset", 0.0);
  s.finish();
  return out;
}

}  // namespace

std::vector<double> LadderSpec::resolve(const IntegerAutomorphism& a, const BumpField& field) const {
  std::vector<double> out;
  if (!values.empty()) {
    out = values;
  } else {
    for (int k = 0; k < count; ++k) out.push_back(count == 1 ? start : start + (stop - start) * k / (count - 1));
  }
  double unit = 1.0;
  if (units == "inverse_dfield" || units == "invertibility") {
    if (field.empty() || field.sup_jacobian_norm() == 0.0) {
      for (double t : out)
        if (t != 0.0) throw ConfigError("ladder: units \"" + units + "\" need a non-empty field");
      return out;
    }
    unit = units == "inverse_dfield" ? 1.0 / field.sup_jacobian_norm() : PerturbedMap::invertibility_bound(a, field);
  }
  for (double& t : out) {
    t *= unit;
    if (t != 0.0 && field.empty()) throw ConfigError("ladder: nonzero amplitude without a field");
  }
  return out;
}

const std::vector<std::string>& sweep_quantities() {
  static const std::vector<std::string> q{"c1", "chi_u", "h_top", "ruelle", "ueg"};
  return q;
}

TorusPoint ExperimentConfig::basepoint() const { return TorusPoint(to_vec(point)); }

ExperimentConfig parse_config(const Json& j) {
  Section root(j, "config");
  ExperimentConfig c;
  c.experiment_id = root.string("experiment_id", "");
  if (c.experiment_id.empty()) fail("config.experiment_id", "required");
  if (!root.has("matrix")) fail("config.matrix", "required");
  c.matrix = parse_matrix(root.raw("matrix"));
  const int d = c.dimension();

  c.seed = static_cast<std::uint64_t>(root.integer("seed", 1, 0, std::numeric_limits<std::int64_t>::max()));
  c.threads = static_cast<int>(root.integer("threads", 1, 1, 1024));
  c.output_dir = root.string("output_dir", "out");

  {
    Section b = root.child("budgets");
    c.vertex_cap = static_cast<std::size_t>(b.integer("vertex_cap", static_cast<long long>(kDefaultVertexCap), 16, 1LL << 40));
    c.probe_budget = static_cast<std::size_t>(b.integer("probe_budget", 50'000'000, 1, 1LL << 40));
    b.finish();
  }

  {
    Section f = root.child("field");
    if (f.has("bumps")) {
      const Json& bs = f.raw("bumps");
      if (!bs.is_array()) fail(f.at("bumps"), "expected an array");
      for (std::size_t i = 0; i < bs.size(); ++i) {
        const std::string p = f.at("bumps") + "[" + std::to_string(i) + "]";
        Section b(bs[i], p);
        if (!b.has("center")) fail(b.at("center"), "required");
        if (!b.has("direction")) fail(b.at("direction"), "required");
        const auto center = point_of(b.raw("center"), d, b.at("center"));
        const auto dir = Section::number_list(b.raw("direction"), b.at("direction"));
        if (static_cast<int>(dir.size()) != d) fail(b.at("direction"), "expected " + std::to_string(d) + " components");
        c.bumps.push_back(Bump{TorusPoint(to_vec(center)), b.positive("radius", 0.1), to_vec(dir)});
        b.finish();
      }
    }
    f.finish();
    try {
      (void)c.field();
    } catch (const Error& e) {
      fail("config.field", e.what());
    }
  }

  c.amplitude = root.number("amplitude", 0.0, 0.0);
  {
    Section l = root.child("ladder");
    c.ladder.values = l.numbers("values", {});
    c.ladder.start = l.number("start", 0.0, 0.0);
    c.ladder.stop = l.number("stop", 0.0, 0.0);
    c.ladder.count = static_cast<int>(l.integer("count", c.ladder.values.empty() ? 1 : 0, 0, 10000));
    c.ladder.units = l.string("units", "absolute", {"absolute", "inverse_dfield", "invertibility"});
    l.finish();
    if (!c.ladder.values.empty() && (l.has("count") && c.ladder.count != 0))
      fail("config.ladder", "give either values or (start, stop, count)");
    for (double t : c.ladder.values)
      if (!(t >= 0)) fail("config.ladder.values", "amplitudes must be >= 0");
    if (c.ladder.values.empty() && c.ladder.count < 1) fail("config.ladder.count", "must be >= 1");
    if (c.ladder.units == "invertibility" && std::max(c.ladder.stop, c.ladder.start) >= 1.0)
      fail("config.ladder", "fractions of the invertibility bound must stay below 1");
    try {
      for (double t : c.amplitudes()) PerturbedMap(c.matrix, c.field(), t);
    } catch (const Error& e) {
      fail("config.ladder", e.what());
    }
  }
  if (c.amplitude > 0) {
    try {
      PerturbedMap(c.matrix, c.field(), c.amplitude);
    } catch (const Error& e) {
      fail("config.amplitude", e.what());
    }
  }

  if (root.has("point")) {
    c.point = point_of(root.raw("point"), d, "config.point");
  } else {
    for (int i = 0; i < d; ++i) c.point.push_back(0.2 + 0.1 * i);
  }

  if (root.has("quantities")) {
    const Json& q = root.raw("quantities");
    if (!q.is_array()) fail("config.quantities", "expected an array of strings");
    for (const auto& e : q) {
      if (!e.is_string()) fail("config.quantities", "expected strings");
      const auto s = e.get<std::string>();
      const auto& known = sweep_quantities();
      if (std::find(known.begin(), known.end(), s) == known.end()) fail("config.quantities", "unknown quantity \"" + s + "\"");
      if (std::find(c.quantities.begin(), c.quantities.end(), s) != c.quantities.end())
        fail("config.quantities", "duplicate quantity \"" + s + "\"");
      c.quantities.push_back(s);
    }
    // emission order is fixed
    std::vector<std::string> ordered;
    for (const auto& k : sweep_quantities())
      if (std::find(c.quantities.begin(), c.quantities.end(), k) != c.quantities.end()) ordered.push_back(k);
    c.quantities = ordered;
  } else {
    c.quantities = sweep_quantities();
  }

  {
    Section s = root.child("c1");
    c.c1_samples = static_cast<int>(s.integer("samples", 4096, 1, 1 << 24));
    s.finish();
  }
  {
    Section s = root.child("volume");
    c.volume.delta = s.positive("delta", 0.05);
    c.volume.n_max = static_cast<int>(s.integer("n_max", 12, 1, 200));
    c.volume.eps_geom = s.positive("eps_geom", 0.01);
    c.volume.fit_min = s.number("fit_min", 3);
    c.volume.fit_max = s.number("fit_max", -1);
    s.finish();
  }
  {
    Section s = root.child("entropy");
    auto& e = c.entropy;
    e.n_min = static_cast<int>(s.integer("n_min", e.n_min, 1, 100));
    e.n_max = static_cast<int>(s.integer("n_max", e.n_max, 1, 100));
    e.eps = s.numbers("eps", e.eps);
    e.candidates = s.string("candidates", "halton", {"halton", "grid"}) == "grid" ? CandidateKind::grid : CandidateKind::halton;
    e.candidate_count = static_cast<std::size_t>(s.integer("candidate_count", static_cast<long long>(e.candidate_count), 1, 1LL << 32));
    e.grid_per_axis = static_cast<int>(s.integer("grid_per_axis", e.grid_per_axis, 1, 1 << 16));
    e.fit_min = s.number("fit_min", e.fit_min);
    e.fit_max = s.number("fit_max", e.fit_max);
    e.plateau_tol = s.positive("plateau_tol", e.plateau_tol);
    s.finish();
    if (e.n_max < e.n_min) fail("config.entropy", "n_max < n_min");
    if (e.eps.empty()) fail("config.entropy.eps", "empty ladder");
    for (double x : e.eps)
      if (!(x > 0 && x < 0.5)) fail("config.entropy.eps", "values must lie in (0, 1/2)");
  }
  {
    Section s = root.child("uentropy");
    auto& u = c.uentropy;
    u.delta = s.positive("delta", u.delta);
    u.points = static_cast<int>(s.integer("points", u.points, 1, 4096));
    auto& k = u.schedule;
    k.n_min = static_cast<int>(s.integer("n_min", k.n_min, 1, 100));
    k.n_max = static_cast<int>(s.integer("n_max", k.n_max, 1, 100));
    k.eps = s.numbers("eps", k.eps);
    k.fit_min = s.number("fit_min", k.fit_min);
    k.fit_max = s.number("fit_max", k.fit_max);
    k.plateau_tol = s.positive("plateau_tol", k.plateau_tol);
    k.sample_factor = s.number("sample_factor", k.sample_factor, 1e-6, 0.25);
    k.leaf_eps_geom = s.positive("leaf_eps_geom", k.leaf_eps_geom);
    s.finish();
    if (k.n_max < k.n_min) fail("config.uentropy", "n_max < n_min");
    if (k.eps.empty()) fail("config.uentropy.eps", "empty ladder");
    for (double x : k.eps)
      if (!(x > 0)) fail("config.uentropy.eps", "values must be positive");
  }
  {
    Section s = root.child("center");
    c.center.horizon = static_cast<int>(s.integer("horizon", c.center.horizon, 2, 1 << 20));
    c.center.samples = static_cast<int>(s.integer("samples", c.center.samples, 1, 1 << 20));
    c.center.options.bound_k = s.number("bound_k", 0.0, 0.0);
    c.center.options.rate_tol = s.positive("rate_tol", c.center.options.rate_tol);
    c.center.options.half_ratio = s.number("half_ratio", c.center.options.half_ratio, 1.0);
    s.finish();
  }
  {
    Section s = root.child("ruelle");
    c.ruelle.horizon = static_cast<int>(s.integer("horizon", c.ruelle.horizon, 1, 1 << 20));
    c.ruelle.samples = static_cast<int>(s.integer("samples", c.ruelle.samples, 1, 1 << 24));
    s.finish();
  }
  {
    Section s = root.child("ueg");
    auto& u = c.ueg;
    u.rho = s.positive("rho", u.rho);
    u.delta = s.positive("delta", u.delta);
    u.n = static_cast<int>(s.integer("N", 0, 0, 200));
    u.n_max = static_cast<int>(s.integer("n_max", u.n_max, 1, 200));
    u.basepoints = static_cast<int>(s.integer("basepoints", u.basepoints, 1, 1 << 16));
    u.eps_geom = s.positive("eps_geom", u.eps_geom);
    if (s.has("h_ref") && s.raw("h_ref").is_number()) {
      u.h_ref = "value";
      u.h_ref_value = s.number("h_ref", 0.0, 0.0);
    } else {
      u.h_ref = s.string("h_ref", "estimate", {"estimate", "exact"});
    }
    s.finish();
  }
  {
    Section s = root.child("density");
    auto& e = c.density;
    e.tau = s.number("tau", 0.0, 0.0);
    if (e.tau != 0.0 && e.tau <= 1.0) fail("config.density.tau", "must exceed 1 (or 0 for the expanding eigenvalue)");
    e.n_min = static_cast<int>(s.integer("n_min", e.n_min, 1, 1000));
    e.n_max = static_cast<int>(s.integer("n_max", e.n_max, 1, 1000));
    const auto m = s.string("method", "automatic", {"automatic", "probe", "strand"});
    e.options.method = m == "probe" ? DensityMethod::probe : m == "strand" ? DensityMethod::strand : DensityMethod::automatic;
    e.options.probe_h = s.positive("probe_h", e.options.probe_h);
    e.options.fit_min = s.number("fit_min", 0.0);
    e.options.fit_max = s.number("fit_max", 0.0);
    s.finish();
    if (e.n_max < e.n_min) fail("config.density", "n_max < n_min");
    e.options.probe_budget = c.probe_budget;
  }
  {
    Section s = root.child("rect");
    auto& r = c.rect;
    if (s.has("x0")) r.x0 = point_of(s.raw("x0"), d, s.at("x0"));
    r.n = static_cast<int>(s.integer("n", r.n, 0, 100000));
    r.eps = s.number("eps", r.eps, 0.0);
    r.delta = s.positive("delta", r.delta);
    r.k_max = static_cast<int>(s.integer("k_max", r.k_max, 1, 200));
    r.eps_geom = s.positive("eps_geom", r.eps_geom);
    s.finish();
  }
  {
    Section s = root.child("mixing");
    auto& m = c.mixing;
    m.delta = s.positive("delta", m.delta);
    const Json default_phi{{"type", "bump"}, {"center", std::vector<double>(static_cast<std::size_t>(d), 0.5)}, {"radius", 0.1}, {"margin", 0.1}};
    const Json default_psi{{"type", "bump"}, {"center", c.point}, {"radius", 0.02}, {"margin", 0.1}};
    m.phi = observable_defaults(s.has("phi") ? s.raw("phi") : default_phi, d, s.at("phi"));
    m.psi = observable_defaults(s.has("psi") ? s.raw("psi") : default_psi, d, s.at("psi"));
    m.n_min = static_cast<int>(s.integer("n_min", m.n_min, 0, 1000));
    m.n_max = static_cast<int>(s.integer("n_max", m.n_max, 0, 1000));
    m.options.quad_h = s.positive("quad_h", 5e-7);
    m.options.quad_g = static_cast<int>(s.integer("quad_g", m.options.quad_g, 2, 1 << 16));
    m.options.fit_min = s.number("fit_min", 4.0);
    m.options.fit_max = s.number("fit_max", 0.0);
    m.options.floor_factor = s.positive("floor_factor", m.options.floor_factor);
    s.finish();
    if (m.n_max < m.n_min) fail("config.mixing", "n_max < n_min");
    try {
      make_observable(m.phi, d, "config.mixing.phi");
      make_observable(m.psi, d, "config.mixing.psi");
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail("config.mixing", e.what());
    }
  }
  root.finish();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  Json j;
  try {
    j = Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(j);
}

SmoothObservable make_observable(const Json& spec, int dim, const std::string& path) {
  const Json s = observable_defaults(spec, dim, path);
  const std::string type = s["type"];
  SmoothObservable base = SmoothObservable::constant(dim, 0.0);
  if (type == "constant") {
    base = SmoothObservable::constant(dim, s["value"].get<double>());
  } else if (type == "bump") {
    base = bump_function(TorusPoint(to_vec(s["center"].get<std::vector<double>>())), s["radius"], s["margin"], s["order"],
                         s["r0"]);
  } else {
    std::vector<AxisBump> fs;
    for (const auto& f : s["factors"]) fs.push_back(AxisBump{f["axis"], f["center"], f["radius"], f["margin"]});
    base = product_bump(dim, fs, s["order"]);
  }
  const double scale = s["scale"], offset = s["offset"];
  return scale == 1.0 && offset == 0.0 ? base : base.affine(scale, offset);
}

Json canonical_json(const ExperimentConfig& c) {
  Json j;
  j["experiment_id"] = c.experiment_id;
  Json rows = Json::array();
  for (int i = 0; i < c.dimension(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < c.dimension(); ++k) row.push_back(c.matrix.entries()(i, k));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  j["seed"] = c.seed;
  j["budgets"] = {{"vertex_cap", c.vertex_cap}, {"probe_budget", c.probe_budget}};
  Json bumps = Json::array();
  const BumpField field = c.field();
  for (const auto& b : field.bumps())
    bumps.push_back({{"center", from_vec(b.center.coords())}, {"radius", b.radius}, {"direction", from_vec(b.direction)}});
  j["field"] = {{"bumps", bumps}};
  j["amplitude"] = c.amplitude;
  if (!c.ladder.values.empty())
    j["ladder"] = {{"values", c.ladder.values}, {"units", c.ladder.units}};
  else
    j["ladder"] = {{"start", c.ladder.start}, {"stop", c.ladder.stop}, {"count", c.ladder.count}, {"units", c.ladder.units}};
  j["point"] = c.point;
  j["quantities"] = c.quantities;
  j["c1"] = {{"samples", c.c1_samples}};
  j["volume"] = {{"delta", c.volume.delta}, {"n_max", c.volume.n_max}, {"eps_geom", c.volume.eps_geom},
                 {"fit_min", c.volume.fit_min}, {"fit_max", c.volume.fit_max}};
  const auto& e = c.entropy;
  j["entropy"] = {{"n_min", e.n_min},
                  {"n_max", e.n_max},
                  {"eps", e.eps},
                  {"candidates", e.candidates == CandidateKind::grid ? "grid" : "halton"},
                  {"candidate_count", e.candidate_count},
                  {"grid_per_axis", e.grid_per_axis},
                  {"fit_min", e.fit_min},
                  {"fit_max", e.fit_max},
                  {"plateau_tol", e.plateau_tol}};
  const auto& u = c.uentropy;
  j["uentropy"] = {{"delta", u.delta},
                   {"points", u.points},
                   {"n_min", u.schedule.n_min},
                   {"n_max", u.schedule.n_max},
                   {"eps", u.schedule.eps},
                   {"fit_min", u.schedule.fit_min},
                   {"fit_max", u.schedule.fit_max},
                   {"plateau_tol", u.schedule.plateau_tol},
                   {"sample_factor", u.schedule.sample_factor},
                   {"leaf_eps_geom", u.schedule.leaf_eps_geom}};
  j["center"] = {{"horizon", c.center.horizon},
                 {"samples", c.center.samples},
                 {"bound_k", c.center.options.bound_k},
                 {"rate_tol", c.center.options.rate_tol},
                 {"half_ratio", c.center.options.half_ratio}};
  j["ruelle"] = {{"horizon", c.ruelle.horizon}, {"samples", c.ruelle.samples}};
  j["ueg"] = {{"rho", c.ueg.rho},         {"delta", c.ueg.delta},           {"N", c.ueg.n},
              {"n_max", c.ueg.n_max},     {"basepoints", c.ueg.basepoints}, {"eps_geom", c.ueg.eps_geom}};
  if (c.ueg.h_ref == "value")
    j["ueg"]["h_ref"] = c.ueg.h_ref_value;
  else
    j["ueg"]["h_ref"] = c.ueg.h_ref;
  const auto& dn = c.density;
  j["density"] = {{"tau", dn.tau},
                  {"n_min", dn.n_min},
                  {"n_max", dn.n_max},
                  {"method", to_string(dn.options.method)},
                  {"probe_h", dn.options.probe_h},
                  {"fit_min", dn.options.fit_min},
                  {"fit_max", dn.options.fit_max}};
  j["rect"] = {{"n", c.rect.n}, {"eps", c.rect.eps}, {"delta", c.rect.delta}, {"k_max", c.rect.k_max}, {"eps_geom", c.rect.eps_geom}};
  if (c.rect.x0) j["rect"]["x0"] = *c.rect.x0;
  const auto& m = c.mixing;
  j["mixing"] = {{"delta", m.delta},
                 {"phi", m.phi},
                 {"psi", m.psi},
                 {"n_min", m.n_min},
                 {"n_max", m.n_max},
                 {"quad_h", m.options.quad_h},
                 {"quad_g", m.options.quad_g},
                 {"fit_min", m.options.fit_min},
                 {"fit_max", m.options.fit_max},
                 {"floor_factor", m.options.floor_factor}};
  return j;
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string text = canonical_json(cfg).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace toralent
