#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "toralent/config.hpp"
#include "toralent/errors.hpp"
#include "toralent/experiment.hpp"
#include "toralent/report.hpp"

using namespace toralent;
namespace fs = std::filesystem;

namespace {

const double kCat = std::log((3.0 + std::sqrt(5.0)) / 2.0);

// Small cat-map sweep: every quantity, cheap schedules.
Json small_sweep() {
  return Json::parse(R"({
    "experiment_id": "small",
    "matrix": [[2, 1], [1, 1]],
    "field": {"bumps": [{"center": [0.3, 0.6], "radius": 0.2, "direction": [1, 0]}]},
    "ladder": {"start": 0, "stop": 0.01, "count": 3, "units": "inverse_dfield"},
    "seed": 11,
    "c1": {"samples": 256},
    "volume": {"n_max": 8},
    "entropy": {"eps": [0.1, 0.07], "candidate_count": 8192, "n_max": 4, "fit_min": 2, "fit_max": 4},
    "ruelle": {"horizon": 10, "samples": 32},
    "ueg": {"basepoints": 4, "N": 3}
  })");
}

std::string strip_wall_time(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("toralent_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ResultRecord sample_record(double t, const std::string& q, double value) {
  ResultRecord r;
  r.experiment_id = "e";
  r.config_hash = "0123456789abcdef";
  r.operation = "sweep";
  r.inputs = {{"t", t}, {"quantity", q}};
  r.outputs = {{"value", value}, {"residual", 0.5}, {"flags", Json::array({"a", "b"})}};
  r.wall_time = 1.25;
  return r;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(TORALENT_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config: defaults, canonical round trip and hash") {
  const auto cfg = parse_config(Json::parse(R"({"experiment_id": "x", "matrix": "2 1\n1 1"})"));
  CHECK(cfg.dimension() == 2);
  CHECK(cfg.quantities == sweep_quantities());
  CHECK(cfg.amplitudes() == std::vector<double>{0.0});
  CHECK(cfg.point == std::vector<double>{0.2, 0.2 + 0.1});

  const auto canon = canonical_json(cfg);
  const auto again = parse_config(canon);
  CHECK(canonical_json(again) == canon);
  CHECK(config_hash(again) == config_hash(cfg));
  CHECK(config_hash(cfg).size() == 16);

  const auto sweep = parse_config(small_sweep());
  CHECK(config_hash(parse_config(canonical_json(sweep))) == config_hash(sweep));
  CHECK(config_hash(sweep) != config_hash(cfg));
}

TEST_CASE("config: threads and output_dir leave the hash alone, seed does not") {
  auto j = small_sweep();
  const auto base = config_hash(parse_config(j));
  j["threads"] = 8;
  j["output_dir"] = "elsewhere";
  CHECK(config_hash(parse_config(j)) == base);
  j["seed"] = 12;
  CHECK(config_hash(parse_config(j)) != base);
}

TEST_CASE("config: rejections name the offending path") {
  auto expect_error = [](const Json& j, const std::string& fragment) {
    try {
      (void)parse_config(j);
      FAIL("accepted: " << j.dump());
    } catch (const ConfigError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, std::string(e.what()));
    }
  };
  auto j = small_sweep();
  j["colour"] = "blue";
  expect_error(j, "config.colour");
  j = small_sweep();
  j["ueg"]["rh0"] = 0.1;
  expect_error(j, "config.ueg.rh0");
  j = small_sweep();
  j["field"]["bumps"][0]["radius"] = "wide";
  expect_error(j, "config.field.bumps[0].radius");
  j = small_sweep();
  j["quantities"] = {"chi_u", "lyapunov"};
  expect_error(j, "config.quantities");
  j = small_sweep();
  j.erase("matrix");
  expect_error(j, "config.matrix");
  j = small_sweep();
  j["matrix"] = {{2, 1}, {2, 1}};
  expect_error(j, "config.matrix");
  j = small_sweep();
  j["ladder"] = {{"values", {0.0, 5.0}}};
  expect_error(j, "config.ladder");
  j = small_sweep();
  j["ladder"] = {{"start", 0}, {"stop", 1.0}, {"count", 3}, {"units", "invertibility"}};
  expect_error(j, "config.ladder");
  j = small_sweep();
  j["mixing"] = {{"phi", {{"type", "gaussian"}}}};
  expect_error(j, "config.mixing.phi");
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("ladder units resolve against the field") {
  const auto cfg = parse_config(small_sweep());
  const auto t = cfg.amplitudes();
  REQUIRE(t.size() == 3);
  const double step = 0.005 / cfg.field().sup_jacobian_norm();
  CHECK(t[0] == 0.0);
  CHECK(t[1] == doctest::Approx(step).epsilon(1e-12));
  CHECK(t[2] == doctest::Approx(2 * step).epsilon(1e-12));

  auto j = small_sweep();
  j["ladder"] = {{"start", 0.5}, {"stop", 0.5}, {"count", 1}, {"units", "invertibility"}};
  const auto inv = parse_config(j);
  CHECK(inv.amplitudes()[0] == doctest::Approx(0.5 * PerturbedMap::invertibility_bound(inv.matrix, inv.field())).epsilon(1e-12));
}

TEST_CASE("result records survive a JSON round trip") {
  auto r = sample_record(0.25, "chi_u", 0.96);
  r.outputs["value"] = nullptr;
  const auto back = ResultRecord::from_json(Json::parse(r.to_line()));
  CHECK(back.to_line() == r.to_line());
  CHECK(back.has_flag("a"));
  CHECK_FALSE(back.has_flag("c"));
  CHECK_THROWS_AS(ResultRecord::from_json(Json::parse(R"({"operation": "x"})")), ConfigError);
}

TEST_CASE("CSV: header only, single row, missing values, quoting") {
  const std::string empty = records_csv({});
  CHECK(empty == std::string(kCsvHeader) + "\n");

  const auto one = records_csv({sample_record(0.5, "chi_u", 0.1)});
  CHECK(line_count(one) == 2);
  CHECK(one.find("\ne,0123456789abcdef,sweep,0.5,chi_u,0.10000000000000001,0.5,a;b,1.250000\n") != std::string::npos);

  auto odd = sample_record(0.0, "x,y", 1.0);
  odd.inputs["t"] = nullptr;
  odd.outputs["residual"] = nullptr;
  const auto csv = records_csv({odd});
  CHECK(csv.find(",sweep,,\"x,y\",1,,a;b,") != std::string::npos);

  // 17 significant digits reproduce the double exactly
  const double x = 0.1 + 0.2;
  const auto row = records_csv({sample_record(0.0, "q", x)});
  const auto start = row.find(",q,") + 3;
  CHECK(std::stod(row.substr(start, row.find(',', start) - start)) == x);
}

TEST_CASE("SVG: one panel per quantity") {
  std::vector<ResultRecord> rs;
  for (double t : {0.0, 0.1, 0.2}) {
    rs.push_back(sample_record(t, "chi_u", 0.96 + t));
    rs.push_back(sample_record(t, "ruelle", 1.0 - t));
  }
  auto summary = sample_record(0, "chi_u_max_deviation", 0.01);
  summary.inputs["t"] = nullptr;
  rs.push_back(summary);
  const auto svg = records_svg(rs);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  std::size_t panels = 0;
  for (auto p = svg.find("<g>"); p != std::string::npos; p = svg.find("<g>", p + 1)) ++panels;
  CHECK(panels == 2);
  CHECK(svg.find(">chi_u<") != std::string::npos);
  CHECK(svg.find("chi_u_max_deviation") == std::string::npos);

  const auto single = records_svg({sample_record(0.3, "h_top", 0.9)});
  CHECK(single.find("<circle") != std::string::npos);
  CHECK(records_svg({}).find("<g>") == std::string::npos);
}

TEST_CASE("emit_report writes both files and fails on an unwritable path") {
  const auto dir = scratch("report");
  const auto files = emit_report({sample_record(0.0, "chi_u", 1.0)}, dir.string(), "r");
  CHECK(fs::exists(files.csv));
  CHECK(fs::exists(files.svg));
  std::ofstream(dir / "plain_file") << "x";
  CHECK_THROWS_AS(emit_report({}, (dir / "plain_file" / "sub").string()), OutputError);
  CHECK_THROWS_AS(append_records((dir / "missing" / "results.jsonl").string(), {}), OutputError);
}

TEST_CASE("sweep: row count, determinism across threads, tamper check") {
  const auto cfg = parse_config(small_sweep());
  const auto one = run_sweep(cfg, 1);
  CHECK(one.size() == expected_sweep_records(cfg));
  CHECK(one.size() == 3 * 5 + 2);
  const auto csv1 = records_csv(one);
  CHECK(line_count(csv1) == one.size() + 1);

  const auto eight = run_sweep(cfg, 8);
  CHECK(strip_wall_time(records_csv(eight)) == strip_wall_time(csv1));
  CHECK(strip_wall_time(records_csv(run_sweep(cfg, 3))) == strip_wall_time(csv1));

  for (const auto& r : one) {
    CHECK(r.config_hash == config_hash(cfg));
    CHECK_FALSE(r.has_flag("failed"));
  }
  CHECK(one.back().inputs["quantity"] == "ruelle_max_excess");
  CHECK(one[one.size() - 2].inputs["quantity"] == "chi_u_max_deviation");
  CHECK(one[one.size() - 2].outputs["value"].get<double>() <= 0.05);

  const auto dir = scratch("sweep");
  const auto path = (dir / "results.jsonl").string();
  append_records(path, one);
  auto loaded = load_records(path);
  REQUIRE(loaded.size() == one.size());
  CHECK_NOTHROW(verify_records(loaded, config_hash(cfg)));
  CHECK(strip_wall_time(records_csv(loaded)) == strip_wall_time(csv1));

  // rewrite one record's hash on disk
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  const auto at = text.find(config_hash(cfg), text.find('\n') + 1);
  text.replace(at, 16, "ffffffffffffffff");
  std::ofstream(path, std::ios::trunc) << text;
  CHECK_THROWS_AS(verify_records(load_records(path), config_hash(cfg)), ConfigError);
}

TEST_CASE("sweep: ladder {0} reduces to single-map analysis") {
  auto j = small_sweep();
  j["ladder"] = {{"values", {0.0}}};
  j["quantities"] = {"chi_u", "ruelle"};
  const auto cfg = parse_config(j);
  const auto rs = run_sweep(cfg, 1);
  REQUIRE(rs.size() == 4);
  CHECK(rs[0].outputs["value"].get<double>() == doctest::Approx(kCat).epsilon(0.02));
  CHECK(rs[1].outputs["value"].get<double>() == doctest::Approx(kCat).epsilon(1e-9));
  CHECK(rs[2].outputs["value"].get<double>() == 0.0);
}

TEST_CASE("sweep: empty quantity list gives a header-only CSV") {
  auto j = small_sweep();
  j["quantities"] = Json::array();
  const auto cfg = parse_config(j);
  const auto rs = run_sweep(cfg, 2);
  CHECK(rs.empty());
  CHECK(expected_sweep_records(cfg) == 0);
  CHECK(records_csv(rs) == std::string(kCsvHeader) + "\n");
}

TEST_CASE("sweep: a resource cap fails that point only") {
  auto j = small_sweep();
  j["quantities"] = {"c1", "chi_u"};
  j["budgets"] = {{"vertex_cap", 64}};
  const auto cfg = parse_config(j);
  const auto rs = run_sweep(cfg, 2);
  CHECK(rs.size() == expected_sweep_records(cfg));
  for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
    CHECK(rs[i].has_flag("failed"));
    CHECK(rs[i].has_flag("resource"));
    CHECK(rs[i].outputs["value"].is_null());
  }
  CHECK(rs.back().has_flag("incomplete"));
}

TEST_CASE("single-operation runners") {
  auto j = small_sweep();
  j["ladder"] = {{"values", {0.0}}};
  const auto cfg = parse_config(j);
  const auto c = run_classify(cfg);
  CHECK(c.outputs["value"].get<double>() == doctest::Approx(kCat).epsilon(1e-12));
  CHECK(c.has_flag("hyperbolic"));
  const auto u = run_uvol(cfg);
  CHECK(u.outputs["value"].get<double>() == doctest::Approx(kCat).epsilon(0.02));
  const auto g = run_ueg(cfg);
  CHECK(g.has_flag("pass"));
  CHECK(g.outputs["N"] == 3);
  const auto r = run_rect_hit(cfg);
  CHECK((r.has_flag("hit") || r.has_flag("miss")));
}

TEST_CASE("CLI exit codes") {
  const auto dir = scratch("cli");
  const auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const auto good = write("good.json", R"({"experiment_id": "cli-good", "matrix": [[2, 1], [1, 1]]})");
  const auto bad = write("bad.json", R"({"experiment_id": "cli", "matrix": [[2, 1], [1, 1]], "extra": 1})");
  const auto probe = write("probe.json", R"({"experiment_id": "cli", "matrix": [[2, 1], [1, 1]],
    "budgets": {"probe_budget": 10}, "density": {"method": "probe", "n_min": 4, "n_max": 5}})");
  const auto flat = write("flat.json", R"({"experiment_id": "cli", "matrix": [[2, 1], [1, 1]], "point": [0.3, 0.6],
    "mixing": {"phi": {"type": "constant", "value": 0.7}, "psi": {"type": "bump", "center": [0.3, 0.6], "radius": 0.02},
               "quad_h": 2e-5, "n_max": 8}})");
  const auto out = " --out " + (dir / "out").string();

  CHECK(run_cli("validate-config --config " + good) == 0);
  CHECK(run_cli("validate-config --config " + bad) == 2);
  CHECK(run_cli("validate-config --config " + (dir / "missing.json").string()) == 2);
  CHECK(run_cli("classify --config " + good + out) == 0);
  CHECK(run_cli("density --config " + probe + out) == 3);
  CHECK(run_cli("mixing --config " + flat + out) == 0);
  CHECK(run_cli("mixing --config " + flat + out + " --strict") == 4);
  CHECK(run_cli("report --config " + good + out) == 0);
  // records of another config under the same experiment id
  CHECK(run_cli("classify --config " + probe + out) == 0);
  CHECK(run_cli("report --config " + flat + out) == 2);
  CHECK(fs::exists(dir / "out" / "results.jsonl"));
}
