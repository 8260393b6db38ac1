#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "toralent/core.hpp"

using namespace toralent;

namespace {

class IdentityMap final : public TorusMap {
public:
  explicit IdentityMap(int d) : l_(IntMat::Identity(d, d)) {}
  int dimension() const override { return static_cast<int>(l_.rows()); }
  Vec lift(const Vec& x) const override { return x; }
  Mat jacobian(const Vec&) const override { return Mat::Identity(dimension(), dimension()); }
  const IntMat& homotopy_class() const override { return l_; }

private:
  IntMat l_;
};

IntMat cat_matrix() {
  IntMat a(2, 2);
  a << 2, 1, 1, 1;
  return a;
}

}  // namespace

TEST_CASE("torus points are canonical") {
  TorusPoint p{1.25, -0.25, 3.0};
  CHECK(p[0] == doctest::Approx(0.25));
  CHECK(p[1] == doctest::Approx(0.75));
  CHECK(p[2] == 0.0);
  TorusPoint tiny{-1e-18};
  CHECK(tiny[0] >= 0.0);
  CHECK(tiny[0] < 1.0);
  CHECK_THROWS_AS(TorusPoint(Vec(0)), ContractViolation);
}

TEST_CASE("torus_distance examples") {
  CHECK(torus_distance(TorusPoint{0.1}, TorusPoint{0.9}) == doctest::Approx(0.2));
  CHECK(torus_distance(TorusPoint{0.3, 0.7}, TorusPoint{0.3, 0.7}) == 0.0);
  CHECK_THROWS_AS(torus_distance(TorusPoint{0.1}, TorusPoint{0.1, 0.2}), ContractViolation);
}

TEST_CASE("torus_distance matches brute force over 27 translates in d=3") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    Vec x(3), y(3);
    for (int i = 0; i < 3; ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
    }
    const double got = torus_distance(TorusPoint(x), TorusPoint(y));
    CHECK(got == doctest::Approx(oracle::torus_distance_brute(TorusPoint(x).coords(), TorusPoint(y).coords())).epsilon(1e-14));
    CHECK(got <= 0.5);
  }
}

TEST_CASE("torus_distance triangle inequality and symmetry on 1e4 triples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    TorusPoint x{u(rng), u(rng)}, y{u(rng), u(rng)}, z{u(rng), u(rng)};
    if (torus_distance(x, z) > torus_distance(x, y) + torus_distance(y, z) + 1e-12) ++violations;
    if (torus_distance(x, y) != torus_distance(y, x)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("orbit") {
  LinearTorusMap cat(cat_matrix());
  const TorusPoint x{0.5, 0.5};
  CHECK(orbit(cat, x, 0).size() == 1);
  const auto orb = orbit(cat, x, 2);
  REQUIRE(orb.size() == 3);
  // (0.5,0.5) -> (1.5,1.0) = (0.5,0) -> (1.0,0.5) = (0,0.5)
  CHECK(orb[1][0] == doctest::Approx(0.5));
  CHECK(orb[1][1] == doctest::Approx(0.0));
  CHECK(orb[2][0] == doctest::Approx(0.0));
  CHECK(orb[2][1] == doctest::Approx(0.5));

  IdentityMap id(2);
  for (const auto& p : orbit(id, TorusPoint{0.2, 0.9}, 5)) CHECK(p == TorusPoint{0.2, 0.9});
}

TEST_CASE("bowen_distance") {
  LinearTorusMap cat(cat_matrix());
  IdentityMap id(2);
  const TorusPoint x{0.0, 0.0}, y{0.001, 0.0};
  CHECK(bowen_distance(cat, 1, x, y) == torus_distance(x, y));
  CHECK(bowen_distance(id, 9, x, y) == torus_distance(x, y));
  // explicit iteration of the displacement: v_{j+1} = A v_j
  double vx = 0.001, vy = 0.0, expected = 0.0;
  for (int j = 0; j < 5; ++j) {
    expected = std::max(expected, std::max(std::abs(vx), std::abs(vy)));
    const double nx = 2 * vx + vy, ny = vx + vy;
    vx = nx;
    vy = ny;
  }
  CHECK(bowen_distance(cat, 5, x, y) == doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(bowen_distance(cat, 0, x, y), ContractViolation);
}

TEST_CASE("bowen_distance is monotone in n") {
  LinearTorusMap cat(cat_matrix());
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    TorusPoint x{u(rng), u(rng)}, y{u(rng), u(rng)};
    double prev = 0.0;
    for (int n = 1; n <= 12; ++n) {
      const double b = bowen_distance(cat, n, x, y);
      CHECK(b >= prev);
      prev = b;
    }
  }
}

TEST_CASE("jacobian_cocycle of a linear map is a matrix power") {
  LinearTorusMap cat(cat_matrix());
  const TorusPoint x{0.3, 0.6};
  CHECK((jacobian_cocycle(cat, x, 1) - cat.matrix()).norm() == 0.0);
  Mat p = Mat::Identity(2, 2);
  for (int n = 1; n <= 8; ++n) {
    p = cat.matrix() * p;
    CHECK((jacobian_cocycle(cat, x, n) - p).norm() == 0.0);
  }
  CHECK_THROWS_AS(jacobian_cocycle(cat, x, 0), ContractViolation);
}
