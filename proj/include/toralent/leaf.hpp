#pragma once

#include <cstdint>
#include <vector>

#include "toralent/core.hpp"

namespace toralent {

/// Default hard cap on polyline vertices during growth.
inline constexpr std::size_t kDefaultVertexCap = 5'000'000;

/// Discretized curve f^k(seed) where seed(s) = origin + s * direction, s in [s_lo, s_hi].
///
/// Each vertex keeps its seed parameter, so refinement can pull a midpoint back
/// to the seed and push it forward exactly. Positions are stored as canonical
/// torus coordinates plus an integer lift offset; consecutive vertices are
/// joined by the straight segment between their lifts.
class LeafPolyline {
public:
  LeafPolyline() = default;

  /// Straight seed segment through `origin` along `direction` (normalized
  /// internally) with parameters in [s_lo, s_hi], s_lo <= 0 <= s_hi, and
  /// vertex spacing at most `spacing`. Parameter 0 is always a vertex.
  static LeafPolyline segment(const TorusPoint& origin, const Vec& direction, double s_lo, double s_hi,
                              double spacing);

  /// Polyline through explicitly given seed parameters (sorted, must contain 0).
  static LeafPolyline from_params(const TorusPoint& origin, const Vec& direction, std::vector<double> params);

  int dimension() const { return dim_; }
  std::size_t size() const { return params_.size(); }
  int steps() const { return steps_; }
  std::size_t basepoint_index() const { return base_; }

  const TorusPoint& seed_origin() const { return origin_; }
  const Vec& seed_direction() const { return direction_; }

  double param(std::size_t i) const { return params_[i]; }
  const std::vector<double>& params() const { return params_; }
  TorusPoint point(std::size_t i) const;
  /// Canonical coordinates plus lift offset.
  Vec lifted(std::size_t i) const;
  /// lifted(i + 1) - lifted(i), computed without forming large lifts.
  Vec segment_vector(std::size_t i) const;

  /// Cumulative Euclidean arclength; arclength(0) = 0.
  double arclength(std::size_t i) const { return cumulative_[i]; }
  double length() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  /// Signed arclength from the basepoint.
  double arclength_from_base(std::size_t i) const { return cumulative_[i] - cumulative_[base_]; }

  /// Largest lifted gap between consecutive vertices.
  double max_gap() const;

  /// Lifted position (canonical coords + offset) of seed parameter s after steps() applications.
  void evaluate(const TorusMap& map, double s, double* coords, std::int64_t* offset) const;

  /// Point at arclength position `a` in [0, length()] by linear interpolation,
  /// returned as a lift, with the interpolated seed parameter.
  Vec lifted_at_arclength(double a, double* param_out = nullptr) const;

  /// Restriction to seed parameters in [s_lo, s_hi] (endpoints evaluated exactly).
  LeafPolyline restricted(const TorusMap& map, double s_lo, double s_hi) const;

  /// Raw storage, used by the growth and density routines.
  const std::vector<double>& coords() const { return coords_; }
  const std::vector<std::int64_t>& offsets() const { return offsets_; }

private:
  friend LeafPolyline grow_leaf(const TorusMap&, const LeafPolyline&, int, double, std::size_t);
  friend LeafPolyline refine_leaf(const TorusMap&, const LeafPolyline&, double, std::size_t);
  void rebuild_arclength();

  int dim_ = 0;
  int steps_ = 0;
  std::size_t base_ = 0;
  TorusPoint origin_;
  Vec direction_;
  std::vector<double> params_;
  std::vector<double> coords_;
  std::vector<std::int64_t> offsets_;
  std::vector<double> cumulative_;
};

/// One map application on a lifted point stored as (canonical coords, integer offset).
void step_lifted(const TorusMap& map, double* coords, std::int64_t* offset);

/// Image of the leaf after `steps` applications. Any segment whose lifted
/// image is longer than eps_geom is bisected in the seed parameter until all
/// gaps are at most eps_geom. Throws ResourceError past `vertex_cap`.
LeafPolyline grow_leaf(const TorusMap& map, const LeafPolyline& leaf, int steps, double eps_geom,
                       std::size_t vertex_cap = kDefaultVertexCap);

/// The same leaf with extra vertices so every gap is at most eps_geom (no map steps).
LeafPolyline refine_leaf(const TorusMap& map, const LeafPolyline& leaf, double eps_geom,
                         std::size_t vertex_cap = kDefaultVertexCap);

}  // namespace toralent
