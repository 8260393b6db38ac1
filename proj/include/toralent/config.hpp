#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toralent/density.hpp"
#include "toralent/entropy.hpp"
#include "toralent/linear.hpp"
#include "toralent/observable.hpp"
#include "toralent/perturbation.hpp"

namespace toralent {

using Json = nlohmann::json;

/// Amplitude ladder as an explicit list or (start, stop, count) in one of
/// three units: absolute amplitudes, multiples of 1 / sup|D field|, or
/// fractions of the invertibility bound.
struct LadderSpec {
  std::vector<double> values;
  double start = 0, stop = 0;
  int count = 0;
  std::string units = "absolute";

  /// Resolved amplitudes for the given field (empty field: only t = 0 is allowed).
  std::vector<double> resolve(const IntegerAutomorphism& a, const BumpField& field) const;
};

struct VolumeSpec {
  double delta = 0.05;
  int n_max = 12;
  double eps_geom = 0.01;
  double fit_min = 3;
  double fit_max = -1;
};

struct UnstableEntropySpec {
  double delta = 0.1;
  int points = 4;
  UnstableSchedule schedule;
};

struct CenterSpec {
  int horizon = 200;
  int samples = 16;
  CenterGrowthOptions options;
};

struct RuelleSpec {
  int horizon = 20;
  int samples = 256;
};

struct UegSpec {
  double rho = 0.1;
  double delta = 0.05;
  int n = 0;  // 0: search N = 1..n_max on the unperturbed map
  int n_max = 25;
  int basepoints = 64;
  double eps_geom = 0.01;
  /// "estimate": exact entropy at t = 0, the h_top estimate of f_t otherwise;
  /// "exact": always the exact entropy of A; or a fixed number.
  std::string h_ref = "estimate";
  double h_ref_value = 0;
};

struct DensitySpec {
  double tau = 0;  // 0: the expanding eigenvalue
  int n_min = 4;
  int n_max = 14;
  DensityOptions options;
};

struct RectSpec {
  std::optional<std::vector<double>> x0;  // default: the basepoint
  int n = 10;
  double eps = 0.1;
  double delta = 0.05;
  int k_max = 30;
  double eps_geom = 0.05;
};

struct MixingSpec {
  double delta = 0.1;
  Json phi;
  Json psi;
  int n_min = 1;
  int n_max = 12;
  MixingOptions options;
};

struct ExperimentConfig {
  std::string experiment_id;
  IntegerAutomorphism matrix = IntegerAutomorphism::identity(1);
  std::vector<Bump> bumps;
  double amplitude = 0;
  LadderSpec ladder;
  std::vector<double> point;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string output_dir = "out";
  std::size_t vertex_cap = kDefaultVertexCap;
  std::size_t probe_budget = 50'000'000;
  std::vector<std::string> quantities;
  int c1_samples = 4096;

  VolumeSpec volume;
  SeparatedSchedule entropy;
  UnstableEntropySpec uentropy;
  CenterSpec center;
  RuelleSpec ruelle;
  UegSpec ueg;
  DensitySpec density;
  RectSpec rect;
  MixingSpec mixing;

  int dimension() const { return matrix.dimension(); }
  BumpField field() const { return BumpField(dimension(), bumps); }
  TorusPoint basepoint() const;
  std::vector<double> amplitudes() const { return ladder.resolve(matrix, field()); }
};

/// Quantities a sweep can compute, in emission order.
const std::vector<std::string>& sweep_quantities();

/// Parses and validates a config object. Unknown keys, wrong types and
/// out-of-range values raise ConfigError naming the offending path.
ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::string& path);

/// Every field with defaults filled in. Execution-only settings (threads,
/// output_dir) are left out, so they never change the hash.
Json canonical_json(const ExperimentConfig& cfg);
/// FNV-1a 64 of the compact canonical dump, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

/// Observable from its config entry ({"type": "bump" | "product" | "constant", ...}).
SmoothObservable make_observable(const Json& spec, int dim, const std::string& path = "observable");

}  // namespace toralent
