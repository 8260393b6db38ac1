#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toralent/core.hpp"
#include "toralent/growth.hpp"
#include "toralent/leaf.hpp"
#include "toralent/linear.hpp"
#include "toralent/observable.hpp"
#include "toralent/sampling.hpp"

namespace toralent {

struct CoveringRadius {
  double radius = 0;
  /// Additive error bound h sqrt(d) / 2 of the probe grid.
  double probe_error = 0;
  std::size_t probes = 0;
};

/// max over the cell-centred probe grid of spacing <= h of the sup-norm torus
/// distance to the nearest point, found by ring search in a bucket grid.
CoveringRadius covering_radius(const PointSet& points, double probe_h, std::size_t probe_budget = 50'000'000);

/// Covering radius of the wrapped segment x + [-L/2, L/2] u in T^2, from the
/// gaps of its crossings with a horizontal circle: for a line, the sup-norm
/// distance to a strand is the horizontal gap times |u_2| / (|u_1| + |u_2|).
/// Exact for the wrapped line; the finite segment is represented by its
/// smallest crossing count floor(L |u_2|).
double strand_covering_radius(const Vec& u, double length);

enum class DensityMethod { automatic, probe, strand };
std::string to_string(DensityMethod m);

struct DensityOptions {
  double probe_h = 1.0 / 1024;
  std::size_t probe_budget = 50'000'000;
  DensityMethod method = DensityMethod::automatic;
  double fit_min = 0;  // in n; <= 0 uses the whole range
  double fit_max = 0;
};

struct DensityProfile {
  /// (log n, log covering radius), fitted over the window.
  GrowthCurve curve;
  std::vector<int> n;
  std::vector<double> radius;
  std::vector<double> probe_error;
  DensityMethod method = DensityMethod::probe;
};

/// Covering radius of the wrapped leaf ball B^u(x, tau^n) for n in [n_min, n_max].
/// Requires an ergodic A with dim E^u >= 1, tau > 1 and d <= 3. The strand
/// method (automatic for d = 2) needs no probes; the probe method samples
/// the leaf ball at spacing probe_h and throws ResourceError past the budget.
DensityProfile effective_density_profile(const IntegerAutomorphism& a, const TorusPoint& x, double tau, int n_min,
                                         int n_max, const DensityOptions& opts = {});

/// Product-like neighbourhood of x0: points y + v with y - x0 in E^cs of
/// length <= C_eps^-1 e^{-n eps} delta / 2 and v in E^u of length <= 2 delta.
struct Rectangle {
  TorusPoint x0;
  int n = 0;
  double eps = 0;
  double delta = 0;
  double c_eps = 1;

  double center_stable_radius() const;
  /// Membership through the base projections, on the nearest lift of p - x0.
  bool contains(const TorusPoint& p, const SpectralSplitting& base) const;
};

struct RectangleHit {
  bool hit = false;
  TorusPoint y;             // where the image leaf crosses x0 + E^cs
  double arclength = 0;     // position of y along the image leaf
  int k = 0;
};

/// Grows f^k(leaf) and looks for a crossing y of x0 + E^cs inside the
/// rectangle whose plaque W^u(y, 2 delta) lies in the image (arclength at
/// least 2 delta from both ends).
RectangleHit rectangle_hit(const TorusMap& map, const SpectralSplitting& base, const LeafPolyline& leaf,
                           const Rectangle& rect, int k, double eps_geom, std::size_t vertex_cap = kDefaultVertexCap);

/// Smallest k in [1, k_max] with a hit, or -1.
int minimal_hitting_k(const TorusMap& map, const SpectralSplitting& base, const LeafPolyline& leaf,
                      const Rectangle& rect, int k_max, double eps_geom, std::size_t vertex_cap = kDefaultVertexCap);

/// Greedy plaque centres along a leaf: arclength positions 2 delta, 6 delta, ...
/// up to length - 2 delta, i.e. pairwise 4 delta apart with 2 delta-plaques inside.
std::size_t plaque_count(const LeafPolyline& leaf, double delta, std::vector<TorusPoint>* witnesses = nullptr);

struct UegCertificate {
  /// Minimum over the sampled basepoints.
  std::size_t count = 0;
  double required = 0;
  bool pass = false;
  int N = 0;
  std::size_t argmin = 0;
  std::vector<std::size_t> per_basepoint;
  /// Plaque centres on the image leaf of the arg-min basepoint.
  std::vector<TorusPoint> witnesses;
};

/// Sampled-UEG certificate: count disjoint 2 delta-plaques in f^N(W^u(x, delta))
/// for every basepoint, report the minimum and compare with e^{N(h_ref - 3 rho)}.
/// `leaves` supplies W^u(x, delta) for each basepoint.
UegCertificate ueg_certificate(const TorusMap& map, double rho, double delta, double h_ref, int N,
                               const std::vector<LeafPolyline>& leaves, double eps_geom,
                               std::size_t vertex_cap = kDefaultVertexCap);

/// Certificates for N = 1, 2, ... up to n_max; returns the first passing one,
/// or the n_max certificate when none passes.
UegCertificate ueg_certificate_search(const TorusMap& map, double rho, double delta, double h_ref, int n_max,
                                      const std::vector<LeafPolyline>& leaves, double eps_geom,
                                      std::size_t vertex_cap = kDefaultVertexCap);

struct MixingOptions {
  double quad_h = 1e-5;  // leaf midpoint spacing
  int quad_g = 256;      // torus midpoint points per axis
  double fit_min = 0;    // <= 0: whole range
  double fit_max = 0;
  double floor_factor = 3.0;
};

struct MixingPoint {
  int n = 0;
  double d_n = 0;
  double floor = 0;
  bool used = false;
};

struct MixingEstimate {
  double alpha_fit = 0;
  double residual = 0;
  bool indeterminate = false;
  GrowthCurve curve;  // (n, log D_n) over the used points
  std::vector<MixingPoint> points;
  double phi_integral = 0;
  double phi_integral_error = 0;
  double psi_leaf_integral = 0;
};

/// D_n = |int_W phi(f^n p) psi(p) dm^u - (int phi dm)(int_W psi dm^u)| over the
/// leaf ball W, by composite midpoint rules. The floor of each D_n is the
/// step-halving difference of both quadratures plus a roundoff allowance;
/// D_n below floor_factor x floor are excluded from the decay fit.
MixingEstimate mixing_decay_estimate(const TorusMap& map, const LeafPolyline& leaf, const SmoothObservable& phi,
                                     const SmoothObservable& psi, int n_min, int n_max, const MixingOptions& opts = {});
/// Same on the linear leaf ball W^u(x, delta); requires an ergodic A with dim E^u = 1.
MixingEstimate mixing_decay_estimate(const IntegerAutomorphism& a, const TorusPoint& x, double delta,
                                     const SmoothObservable& phi, const SmoothObservable& psi, int n_min, int n_max,
                                     const MixingOptions& opts = {});

/// Midpoint rule on the g^d tensor grid.
double torus_integral(const SmoothObservable& phi, int g);

}  // namespace toralent
