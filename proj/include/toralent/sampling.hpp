#pragma once

#include <cstdint>
#include <vector>

#include "toralent/core.hpp"

namespace toralent {

/// Flat row-major buffer of points in [0,1)^d, count = data.size() / dim.
struct PointSet {
  int dim = 0;
  std::vector<double> data;

  std::size_t size() const { return dim == 0 ? 0 : data.size() / static_cast<std::size_t>(dim); }
  const double* point(std::size_t i) const { return data.data() + i * static_cast<std::size_t>(dim); }
  TorusPoint at(std::size_t i) const;
  void push_back(const TorusPoint& p);
};

/// Halton sequence in bases 2,3,5,... with a Cranley-Patterson rotation drawn
/// from `seed`. seed = 0 gives the unshifted sequence.
PointSet halton_points(int dim, std::size_t count, std::uint64_t seed);
std::vector<TorusPoint> halton_torus_points(int dim, std::size_t count, std::uint64_t seed);

/// Cell-centred uniform grid with `per_axis` points per axis: (k + 1/2) / per_axis.
PointSet uniform_grid(int dim, int per_axis);

/// Evenly spaced points with spacing 1/count starting at `offset` (T^1).
PointSet circle_grid(std::size_t count, double offset);

}  // namespace toralent
