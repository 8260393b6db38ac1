#pragma once

#include <cstdint>
#include <vector>

#include "toralent/core.hpp"
#include "toralent/growth.hpp"
#include "toralent/leaf.hpp"
#include "toralent/linear.hpp"
#include "toralent/sampling.hpp"

namespace toralent {

/// Greedy (n, eps)-separated subset of `candidates`, scanned in order: a
/// candidate is kept when its Bowen distance to every kept point exceeds eps.
/// Kept orbits are bucketed by their grid cells at times 0 and n-1, so only
/// neighbouring buckets are compared.
std::size_t count_separated(const TorusMap& map, int n, double eps, const PointSet& candidates);

enum class CandidateKind { halton, grid };

struct SeparatedSchedule {
  int n_min = 1;
  int n_max = 6;
  std::vector<double> eps{0.1, 0.07, 0.05};
  /// Halton candidates (candidate_count points, shifted by seed) or the
  /// cell-centred grid with grid_per_axis points per axis.
  CandidateKind candidates = CandidateKind::halton;
  std::size_t candidate_count = std::size_t{1} << 20;
  int grid_per_axis = 1024;
  std::uint64_t seed = 1;
  double fit_min = 3;
  double fit_max = 6;
  double plateau_tol = 0.05;
  int threads = 1;
};

/// The candidate set a schedule describes.
PointSet separated_candidates(int dim, const SeparatedSchedule& schedule);

/// Per-eps curves of log count_separated against n, combined by the plateau rule.
/// Requires at least 4 candidates per eps-cell per axis (for Halton sets,
/// candidate_count^(1/d) * eps >= 4).
EntropyEstimate estimate_topological_entropy(const TorusMap& map, const SeparatedSchedule& schedule);

struct VolumeGrowthOptions {
  double fit_min = 3;
  double fit_max = -1;  // < 0: up to n_max
  std::size_t vertex_cap = kDefaultVertexCap;
};

/// (n, log length f^n(W^u(x, delta))) for n = 0..n_max with a slope fit; the
/// slope estimates chi_u.
GrowthCurve estimate_unstable_volume_growth(const TorusMap& map, const TorusPoint& x, double delta, int n_max,
                                            double eps_geom, const VolumeGrowthOptions& opts = {});
/// Same, starting from a given leaf ball.
GrowthCurve unstable_volume_growth(const TorusMap& map, const LeafPolyline& leaf, int n_max, double eps_geom,
                                   const VolumeGrowthOptions& opts = {});

/// Greedy u-separated count on the leaf ball `leaf` under
/// d^u_n(p, q) = max_{0 <= j < n} arclength between f^j p and f^j q along f^j(leaf).
/// The samples are the vertices of the leaf grown n-1 steps at spacing
/// eps * sample_factor; their images are tracked through every step.
std::size_t count_u_separated(const TorusMap& map, const LeafPolyline& leaf, int n, double eps,
                              double sample_factor = 0.25, std::size_t vertex_cap = kDefaultVertexCap);

struct UnstableSchedule {
  int n_min = 1;
  int n_max = 8;
  std::vector<double> eps{0.1, 0.05, 0.02};
  double fit_min = 3;
  double fit_max = 8;
  double plateau_tol = 0.05;
  double sample_factor = 0.25;
  double leaf_eps_geom = 0.005;
  std::size_t vertex_cap = kDefaultVertexCap;
  int threads = 1;
};

struct UnstableEntropyEstimate {
  EntropyEstimate estimate;  // the arg-sup point's estimate
  std::size_t argsup = 0;
  std::vector<double> per_point;
};

/// sup over x_samples of the per-point plateau estimate from count_u_separated curves.
UnstableEntropyEstimate estimate_unstable_entropy(const TorusMap& map, const std::vector<TorusPoint>& x_samples,
                                                  double delta, const UnstableSchedule& schedule);

/// dim E^c (1/N) max_x log||Df^N|E^c|| + max_x log det(Df|E^u), with E^c, E^u
/// taken from the base splitting (re-projected center cocycle, as in
/// center_growth_profile). Samples are Halton points from `seed`.
double ruelle_upper_bound(const TorusMap& map, const SpectralSplitting& base, int horizon, std::size_t sample_count,
                          std::uint64_t seed = 0);

}  // namespace toralent
