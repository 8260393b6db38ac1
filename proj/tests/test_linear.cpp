#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "toralent/linear.hpp"

using namespace toralent;

namespace {

const double kCatEntropy = std::log((3.0 + std::sqrt(5.0)) / 2.0);

IntegerAutomorphism quartic_example() {
  return IntegerAutomorphism(oracle::companion(oracle::kQuarticA, oracle::kQuarticB));
}

double quartic_lambda() {
  for (const auto& q : oracle::partially_hyperbolic_quartics(3))
    if (q.a == oracle::kQuarticA && q.b == oracle::kQuarticB) return q.lambda_u;
  return 0.0;
}

IntegerAutomorphism unipotent_center_example() {
  return IntegerAutomorphism::from_rows({{2, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}});
}

void check_splitting_invariants(const IntegerAutomorphism& a, const SpectralSplitting& s) {
  const Mat af = a.entries().cast<double>();
  const int d = a.dimension();
  CHECK(s.dim_u() + s.dim_c() + s.dim_s() == d);
  for (const Mat* b : {&s.basis_u, &s.basis_c, &s.basis_s}) {
    if (b->cols() == 0) continue;
    // A v stays in span(b): residual of the orthogonal projection
    const Mat img = af * *b;
    const Mat resid = img - *b * (b->transpose() * img);
    CHECK(resid.norm() <= 1e-8 * std::max(1.0, img.norm()));
  }
  for (const Mat* p : {&s.proj_u, &s.proj_c, &s.proj_s}) {
    CHECK((*p * *p - *p).norm() <= 1e-8);
    CHECK((af * *p - *p * af).norm() <= 1e-8 * af.norm());
  }
  CHECK((s.proj_u + s.proj_c + s.proj_s - Mat::Identity(d, d)).norm() <= 1e-10);
}

}  // namespace

TEST_CASE("integer automorphism construction and parsing") {
  const auto a = IntegerAutomorphism::parse("2 1\n1 1\n");
  CHECK(a == cat_map());
  CHECK(a.determinant() == 1);
  CHECK(IntegerAutomorphism::parse("# comment\n 0 1 \n\n 1 0 # swap\n").determinant() == -1);
  CHECK_THROWS_AS(IntegerAutomorphism::parse("2 0\n0 1\n"), ContractViolation);
  CHECK_THROWS_AS(IntegerAutomorphism::parse("1 2 3\n4 5\n"), ContractViolation);
  CHECK_THROWS_AS(IntegerAutomorphism::parse("1 x\n0 1\n"), ContractViolation);
  CHECK_THROWS_AS(IntegerAutomorphism::identity(9), UnsupportedDimension);
  CHECK(cat_map().power(2) == IntegerAutomorphism::from_rows({{5, 3}, {3, 2}}));
  CHECK(cat_map().inverse() == IntegerAutomorphism::from_rows({{1, -1}, {-1, 2}}));
  CHECK(cat_map().power(-1) == cat_map().inverse());
}

TEST_CASE("spectral split of the cat map") {
  const auto s = spectral_split(cat_map());
  CHECK(s.dim_u() == 1);
  CHECK(s.dim_s() == 1);
  CHECK(s.dim_c() == 0);
  REQUIRE(s.eigenvalues.size() == 2);
  CHECK(s.eigenvalues[0].value.real() == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-14));
  CHECK(s.eigenvalues[1].value.real() == doctest::Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-14));
  // eigenvector of (3+sqrt5)/2 is proportional to (1, (sqrt5-1)/2)
  const Vec u = s.unstable_vector();
  CHECK(u[1] / u[0] == doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(1e-12));
  check_splitting_invariants(cat_map(), s);
}

TEST_CASE("spectral split of the identity") {
  const auto id = IntegerAutomorphism::identity(3);
  const auto s = spectral_split(id);
  CHECK(s.dim_c() == 3);
  REQUIRE(s.eigenvalues.size() == 1);
  CHECK(s.eigenvalues[0].multiplicity == 3);
  CHECK(s.eigenvalues[0].value.real() == 1.0);
  check_splitting_invariants(id, s);
}

TEST_CASE("the search oracle finds partially hyperbolic quartics") {
  const auto found = oracle::partially_hyperbolic_quartics(3);
  CHECK(found.size() >= 10);
  bool has_example = false;
  for (const auto& q : found) has_example = has_example || (q.a == oracle::kQuarticA && q.b == oracle::kQuarticB);
  CHECK(has_example);
  // every hit classifies as partially hyperbolic + ergodic with dims (1,2,1)
  for (const auto& q : found) {
    const IntegerAutomorphism a(oracle::companion(q.a, q.b));
    const auto s = spectral_split(a);
    CHECK(s.dim_u() == 1);
    CHECK(s.dim_c() == 2);
    CHECK(s.dim_s() == 1);
    const auto c = classify(a, s);
    CHECK(c.kind == SpectralClass::partially_hyperbolic);
    CHECK(c.ergodic);
    CHECK(exact_entropy(s) == doctest::Approx(std::log(q.lambda_u)).epsilon(1e-12));
    check_splitting_invariants(a, s);
  }
}

TEST_CASE("classify") {
  auto c = classify(cat_map());
  CHECK(c.kind == SpectralClass::hyperbolic);
  CHECK(c.ergodic);
  c = classify(IntegerAutomorphism::identity(2));
  CHECK(c.kind == SpectralClass::quasiunipotent);
  CHECK_FALSE(c.ergodic);
  CHECK(c.cyclotomic_orders == std::vector<int>{1});
  c = classify(quartic_example());
  CHECK(c.kind == SpectralClass::partially_hyperbolic);
  CHECK(c.ergodic);
  // x^4 - 3x^3 + 2x^2 - 3x + 1: y^2 - 3y = 0, so y = 0 gives x = +-i
  const IntegerAutomorphism rou(oracle::companion(-3, 2));
  c = classify(rou);
  CHECK(c.kind == SpectralClass::partially_hyperbolic);
  CHECK_FALSE(c.ergodic);
  CHECK(c.cyclotomic_orders == std::vector<int>{4});
  // a rotation by a quarter turn is quasiunipotent and not ergodic
  c = classify(IntegerAutomorphism::from_rows({{0, -1}, {1, 0}}));
  CHECK(c.kind == SpectralClass::quasiunipotent);
  CHECK_FALSE(c.ergodic);
}

TEST_CASE("unipotent center block") {
  const auto a = unipotent_center_example();
  const auto s = spectral_split(a);
  CHECK(s.dim_u() == 1);
  CHECK(s.dim_c() == 2);
  CHECK(s.dim_s() == 1);
  check_splitting_invariants(a, s);
  // center is the generalized eigenspace span(e3, e4)
  CHECK((s.basis_c.topRows(2)).norm() <= 1e-10);
  CHECK_FALSE(classify(a, s).ergodic);
}

TEST_CASE("exact entropy") {
  CHECK(exact_entropy(IntegerAutomorphism::identity(2)) == 0.0);
  CHECK(exact_entropy(cat_map()) == doctest::Approx(0.9624236501).epsilon(1e-10));
  CHECK(std::abs(exact_entropy(cat_map()) - kCatEntropy) <= 1e-12);
  CHECK(exact_entropy(quartic_example()) == doctest::Approx(std::log(quartic_lambda())).epsilon(1e-12));
}

TEST_CASE("exact entropy power law and inverse symmetry") {
  for (const auto& a : {cat_map(), quartic_example()}) {
    const double h = exact_entropy(a);
    for (int k = 1; k <= 3; ++k) CHECK(std::abs(exact_entropy(a.power(k)) - k * h) <= 1e-9);
    CHECK(std::abs(exact_entropy(a.inverse()) - h) <= 1e-9);
  }
}

TEST_CASE("dim E^u = 0 iff entropy 0") {
  for (const auto& a : {cat_map(), quartic_example(), IntegerAutomorphism::identity(3), unipotent_center_example(),
                        IntegerAutomorphism::from_rows({{0, -1}, {1, 0}}),
                        IntegerAutomorphism::from_rows({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}})}) {
    const auto s = spectral_split(a);
    CHECK((s.dim_u() == 0) == (exact_entropy(s) == 0.0));
  }
}

TEST_CASE("classification ambiguity is reported") {
  // The Salem pair of x^4 - x^3 - x^2 - x + 1 sits 0.72 away from the circle,
  // so a huge tolerance forces the numeric verdict to disagree with the exact one.
  const IntegerAutomorphism a(oracle::companion(-1, -1));
  CHECK_THROWS_AS(spectral_split(a, 0.8), ClassificationAmbiguity);
  CHECK_NOTHROW(spectral_split(a, 1e-9));
}

TEST_CASE("linear unstable leaf") {
  const TorusPoint x{0.0, 0.0};
  const auto leaf = linear_unstable_polyline(cat_map(), x, 0.1, 0.01);
  CHECK(leaf.length() == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(leaf.param(leaf.basepoint_index()) == 0.0);
  CHECK(leaf.point(leaf.basepoint_index()) == x);
  const Vec dir = leaf.segment_vector(0).normalized();
  CHECK(std::abs(dir.dot(spectral_split(cat_map()).unstable_vector())) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(linear_unstable_leaf(cat_map(), x, 0.0), ContractViolation);
  CHECK_THROWS_AS(linear_unstable_leaf(IntegerAutomorphism::identity(2), x, 0.1), NoUnstableDirection);

  // two expanding directions: cat map (+) cat map
  const auto two = IntegerAutomorphism::from_rows({{2, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 2, 1}, {0, 0, 1, 1}});
  const auto patch = linear_unstable_leaf(two, TorusPoint{0.0, 0.0, 0.0, 0.0}, 0.05);
  REQUIRE(std::holds_alternative<LeafPatch>(patch));
  const auto& lp = std::get<LeafPatch>(patch);
  CHECK((lp.basis.transpose() * lp.basis - Mat::Identity(2, 2)).norm() <= 1e-12);
  CHECK(lp.samples(0.01).size() == 121);
  CHECK_THROWS_AS(linear_unstable_polyline(two, TorusPoint{0.0, 0.0, 0.0, 0.0}, 0.05), UnsupportedDimension);

  const auto three = IntegerAutomorphism::from_rows({{2, 1, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0}, {0, 0, 2, 1, 0, 0},
                                                      {0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 2, 1}, {0, 0, 0, 0, 1, 1}});
  CHECK_THROWS_AS(linear_unstable_leaf(three, TorusPoint(Vec::Zero(6)), 0.05), UnsupportedDimension);
}
