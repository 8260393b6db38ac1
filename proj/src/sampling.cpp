#include "toralent/sampling.hpp"

#include <array>
#include <random>

namespace toralent {

namespace {

constexpr std::array<int, 12> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return r;
}

}  // namespace

TorusPoint PointSet::at(std::size_t i) const {
  return TorusPoint(Vec(Eigen::Map<const Vec>(point(i), dim)));
}

void PointSet::push_back(const TorusPoint& p) {
  if (dim == 0) dim = p.dimension();
  require_same_dimension(dim, p.dimension(), "PointSet::push_back");
  data.insert(data.end(), p.coords().data(), p.coords().data() + dim);
}

PointSet halton_points(int dim, std::size_t count, std::uint64_t seed) {
  if (dim < 1 || dim > static_cast<int>(kPrimes.size())) throw ContractViolation("halton_points: unsupported dimension");
  std::vector<double> shift(static_cast<std::size_t>(dim), 0.0);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& s : shift) s = u(rng);
  }
  PointSet out{dim, {}};
  out.data.reserve(count * static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < count; ++i) {
    for (int k = 0; k < dim; ++k) {
      out.data.push_back(wrap_unit(radical_inverse(i + 1, kPrimes[static_cast<std::size_t>(k)]) + shift[static_cast<std::size_t>(k)]));
    }
  }
  return out;
}

std::vector<TorusPoint> halton_torus_points(int dim, std::size_t count, std::uint64_t seed) {
  const PointSet ps = halton_points(dim, count, seed);
  std::vector<TorusPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(ps.at(i));
  return out;
}

PointSet uniform_grid(int dim, int per_axis) {
  if (dim < 1 || per_axis < 1) throw ContractViolation("uniform_grid: bad arguments");
  std::size_t total = 1;
  for (int k = 0; k < dim; ++k) total *= static_cast<std::size_t>(per_axis);
  PointSet out{dim, {}};
  out.data.resize(total * static_cast<std::size_t>(dim));
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  for (std::size_t i = 0; i < total; ++i) {
    for (int k = 0; k < dim; ++k) {
      out.data[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(k)] =
          (idx[static_cast<std::size_t>(k)] + 0.5) / per_axis;
    }
    for (int k = dim - 1; k >= 0; --k) {
      if (++idx[static_cast<std::size_t>(k)] < per_axis) break;
      idx[static_cast<std::size_t>(k)] = 0;
    }
  }
  return out;
}

PointSet circle_grid(std::size_t count, double offset) {
  PointSet out{1, {}};
  out.data.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.data.push_back(wrap_unit(offset + static_cast<double>(i) / static_cast<double>(count)));
  return out;
}

}  // namespace toralent
