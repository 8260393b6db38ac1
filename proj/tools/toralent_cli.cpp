#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toralent/config.hpp"
#include "toralent/errors.hpp"
#include "toralent/experiment.hpp"
#include "toralent/report.hpp"

namespace fs = std::filesystem;
using namespace toralent;

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfigInvalid = 2, kResourceCap = 3, kNonConverged = 4 };

struct Globals {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::size_t> budget_vertices;
  bool strict = false;
  std::string results;  // report only
};

ExperimentConfig configured(const Globals& g) {
  if (g.config.empty()) throw ConfigError("--config is required");
  auto cfg = load_config(g.config);
  if (g.seed) cfg.seed = *g.seed;
  if (g.budget_vertices) cfg.vertex_cap = *g.budget_vertices;
  if (g.threads) cfg.threads = *g.threads;
  if (cfg.threads < 1) throw ConfigError("--threads: must be at least 1");
  return cfg;
}

std::string out_dir(const Globals& g, const ExperimentConfig& cfg) { return g.out.empty() ? cfg.output_dir : g.out; }

std::string results_path(const std::string& dir) { return (fs::path(dir) / "results.jsonl").string(); }

void print_record(const ResultRecord& r) {
  const Json& t = r.inputs["t"];
  const Json& v = r.outputs["value"];
  std::string flags;
  for (const auto& f : r.outputs["flags"]) flags += (flags.empty() ? "" : ";") + f.get<std::string>();
  std::printf("%-14s t=%-12s %-22s value=%-22s flags=%s\n", r.operation.c_str(), t.is_null() ? "-" : t.dump().c_str(),
              r.inputs["quantity"].get<std::string>().c_str(), v.is_null() ? "nan" : v.dump().c_str(),
              flags.empty() ? "-" : flags.c_str());
}

bool non_converged(const std::vector<ResultRecord>& records) {
  for (const auto& r : records)
    if (r.has_flag("non_converged") || r.has_flag("indeterminate") || r.has_flag("incomplete")) return true;
  return false;
}

int finish(const Globals& g, const std::vector<ResultRecord>& records) {
  bool resource = false;
  for (const auto& r : records) resource = resource || r.has_flag("resource");
  if (resource) {
    std::fprintf(stderr, "toralent: some ladder points hit a resource cap and were recorded as failed\n");
    return kResourceCap;
  }
  if (g.strict && non_converged(records)) {
    std::fprintf(stderr, "toralent: non-convergence flagged (--strict)\n");
    return kNonConverged;
  }
  return kOk;
}

int run_single(const Globals& g, const std::function<ResultRecord(const ExperimentConfig&, int)>& op) {
  const auto cfg = configured(g);
  const auto record = op(cfg, cfg.threads);
  const auto dir = out_dir(g, cfg);
  fs::create_directories(dir);
  append_records(results_path(dir), {record});
  print_record(record);
  return finish(g, {record});
}

int run_sweep_cmd(const Globals& g) {
  const auto cfg = configured(g);
  const auto records = run_sweep(cfg, cfg.threads);
  const auto dir = out_dir(g, cfg);
  fs::create_directories(dir);
  append_records(results_path(dir), records);
  const auto files = emit_report(records, dir, "sweep");
  for (const auto& r : records) print_record(r);
  std::printf("wrote %s, %s, %s\n", results_path(dir).c_str(), files.csv.c_str(), files.svg.c_str());
  return finish(g, records);
}

int run_report_cmd(const Globals& g) {
  std::string dir = g.out;
  std::optional<ExperimentConfig> cfg;
  if (!g.config.empty()) {
    cfg = configured(g);
    if (dir.empty()) dir = cfg->output_dir;
  }
  if (dir.empty()) dir = "out";
  const auto path = g.results.empty() ? results_path(dir) : g.results;
  if (!fs::exists(path)) throw ConfigError(path + ": no results file");
  auto records = load_records(path);
  if (cfg) {
    // Only the records of this experiment; any of them with a foreign hash is tampering.
    std::vector<ResultRecord> mine;
    for (auto& r : records)
      if (r.experiment_id == cfg->experiment_id) mine.push_back(std::move(r));
    verify_records(mine, config_hash(*cfg));
    records = std::move(mine);
  }
  const auto files = emit_report(records, dir, "report");
  std::printf("%zu records\nwrote %s, %s\n", records.size(), files.csv.c_str(), files.svg.c_str());
  return kOk;
}

int run_validate_cmd(const Globals& g) {
  const auto cfg = configured(g);
  std::printf("valid: %s\nexperiment_id: %s\nconfig_hash: %s\n", g.config.c_str(), cfg.experiment_id.c_str(),
              config_hash(cfg).c_str());
  std::printf("%s\n", canonical_json(cfg).dump(2).c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy, unstable growth and mixing experiments for perturbed toral automorphisms", "toralent"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolkitVersion));

  Globals g;
  app.add_option("--config", g.config, "experiment config (JSON)");
  app.add_option("--out", g.out, "output directory (default: the config's output_dir)");
  app.add_option("--seed", g.seed, "override the config seed");
  app.add_option("--threads", g.threads, "worker threads (does not change results)");
  app.add_option("--budget-vertices", g.budget_vertices, "override the leaf vertex cap");
  app.add_flag("--strict", g.strict, "exit 4 when any estimate is flagged non-converged or indeterminate");

  const std::vector<std::pair<std::string, std::function<ResultRecord(const ExperimentConfig&, int)>>> singles = {
      {"classify", [](const ExperimentConfig& c, int) { return run_classify(c); }},
      {"entropy", [](const ExperimentConfig& c, int th) { return run_entropy(c, th); }},
      {"uentropy", [](const ExperimentConfig& c, int th) { return run_uentropy(c, th); }},
      {"uvol", [](const ExperimentConfig& c, int) { return run_uvol(c); }},
      {"center-growth", [](const ExperimentConfig& c, int) { return run_center_growth(c); }},
      {"density", [](const ExperimentConfig& c, int) { return run_density(c); }},
      {"rect-hit", [](const ExperimentConfig& c, int) { return run_rect_hit(c); }},
      {"ueg-cert", [](const ExperimentConfig& c, int) { return run_ueg(c); }},
      {"mixing", [](const ExperimentConfig& c, int) { return run_mixing(c); }},
  };
  const std::map<std::string, std::string> help = {
      {"classify", "spectral splitting and exact entropy of the matrix"},
      {"entropy", "separated-set topological entropy estimate of f_t at the config amplitude"},
      {"uentropy", "unstable entropy estimate along local unstable leaves"},
      {"uvol", "unstable volume growth chi_u"},
      {"center-growth", "growth of the center cocycle and the bounded/polynomial/exponential verdict"},
      {"density", "covering radius of the wrapped unstable ball against n"},
      {"rect-hit", "smallest k at which an unstable leaf crosses a dynamical rectangle"},
      {"ueg-cert", "sampled unstable-equidistribution certificate"},
      {"mixing", "decay rate of leafwise correlations"},
  };

  std::function<int()> action;
  for (const auto& [name, op] : singles) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->fallthrough();
    sub->callback([&, op = op] { action = [&, op] { return run_single(g, op); }; });
  }
  auto* sweep = app.add_subcommand("sweep", "all quantities over the amplitude ladder, with CSV and SVG");
  sweep->fallthrough();
  sweep->callback([&] { action = [&] { return run_sweep_cmd(g); }; });
  auto* report = app.add_subcommand("report", "CSV and SVG from a results file, checking config hashes");
  report->fallthrough();
  report->add_option("--results", g.results, "results file (default: <out>/results.jsonl)");
  report->callback([&] { action = [&] { return run_report_cmd(g); }; });
  auto* validate = app.add_subcommand("validate-config", "check a config against the schema and print its hash");
  validate->fallthrough();
  validate->callback([&] { action = [&] { return run_validate_cmd(g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    return action();
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "toralent: config invalid: %s\n", e.what());
    return kConfigInvalid;
  } catch (const ResourceError& e) {
    std::fprintf(stderr, "toralent: resource cap: %s\n", e.what());
    return kResourceCap;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "toralent: %s\n", e.what());
    return kFailure;
  }
}
