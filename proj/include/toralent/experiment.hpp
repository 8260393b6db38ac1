#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "toralent/config.hpp"

namespace toralent {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// One line of a results file. Every record carries the CSV view of its
/// result in outputs: "value", "residual" and "flags"; inputs hold "t" and
/// "quantity".
struct ResultRecord {
  std::string experiment_id;
  std::string config_hash;
  std::string operation;
  Json inputs = Json::object();
  Json outputs = Json::object();
  double wall_time = 0;
  std::string version = kToolkitVersion;

  Json to_json() const;
  static ResultRecord from_json(const Json& j);
  /// Compact single-line JSON.
  std::string to_line() const;

  bool has_flag(const std::string& flag) const;
};

/// f_t for the config's field, or the linear map when t = 0.
std::unique_ptr<TorusMap> make_map(const ExperimentConfig& cfg, double t);

/// Single-operation runners behind the CLI subcommands. Each evaluates the
/// map at cfg.amplitude where a map is involved.
ResultRecord run_classify(const ExperimentConfig& cfg);
ResultRecord run_entropy(const ExperimentConfig& cfg, int threads = 1);
ResultRecord run_uentropy(const ExperimentConfig& cfg, int threads = 1);
ResultRecord run_uvol(const ExperimentConfig& cfg);
ResultRecord run_center_growth(const ExperimentConfig& cfg);
ResultRecord run_density(const ExperimentConfig& cfg);
ResultRecord run_rect_hit(const ExperimentConfig& cfg);
ResultRecord run_ueg(const ExperimentConfig& cfg);
ResultRecord run_mixing(const ExperimentConfig& cfg);

/// For each amplitude of the ladder: the configured quantities of f_t, one
/// record per (t, quantity), then summary records ("chi_u_max_deviation"
/// when chi_u is computed, "ruelle_max_excess" when ruelle is). Ladder points
/// run on `threads` workers with per-point seed (seed XOR index); records come
/// back in ladder order. A ResourceError at one point marks all of that
/// point's records "failed" and the sweep continues.
std::vector<ResultRecord> run_sweep(const ExperimentConfig& cfg, int threads = 1);

/// Number of records run_sweep emits for a config.
std::size_t expected_sweep_records(const ExperimentConfig& cfg);

/// Appends records as JSON lines.
void append_records(const std::string& path, const std::vector<ResultRecord>& records);
std::vector<ResultRecord> load_records(const std::string& path);
/// Throws ConfigError naming the first record whose hash differs.
void verify_records(const std::vector<ResultRecord>& records, const std::string& expected_hash);

}  // namespace toralent
