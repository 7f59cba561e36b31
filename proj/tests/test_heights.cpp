#include "oracles.hpp"
#include "ratcover/algebraic.hpp"
#include "ratcover/heights.hpp"

#include <doctest.h>

using namespace ratcover;

namespace {

Rational q(long a, long b) { return make_rational(a, b); }

// min over xi_1 in Q(cap) of H(xi_1, -alpha^2 - xi_1 alpha): the degree-2
// polynomial height of a rational alpha when that minimum is <= cap.
Integer poly2_brute(const Rational& alpha, unsigned long cap) {
  Integer best = -1;
  for (const auto& x1 : oracle::rationals_brute(cap)) {
    const Rational x2 = -alpha * alpha - x1 * alpha;
    const Integer h = std::max(height_rat(x1), height_rat(x2));
    if (best < 0 || h < best) best = h;
  }
  return best;
}

}  // namespace

TEST_CASE("height of rationals and points") {
  CHECK(height_rat(q(3, 7)) == 7);
  CHECK(height_rat(q(-9, 4)) == 9);
  CHECK(height_rat(0) == 1);
  CHECK(height_rat(q(6, 4)) == 3);
  CHECK(height_point({q(1, 2), q(-5, 3)}) == 5);
  CHECK(height_point({}) == 0);
}

TEST_CASE("height_rat is max(|num|, den) for random rationals") {
  oracle::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const long a = rng.integer(-1000, 1000), b = rng.integer(1, 1000);
    const long g = std::gcd(a < 0 ? -a : a, b);
    CHECK(height_rat(q(a, b)) == std::max((a < 0 ? -a : a) / g, b / g));
  }
}

TEST_CASE("polynomial height of degree 1 is the ordinary height") {
  oracle::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Rational a = rng.canonical_rational(500);
    const auto h = height_poly_d(a, 1);
    REQUIRE(h);
    CHECK(h->height == height_rat(a));
    CHECK(h->xi == std::vector<Rational>{-a});
  }
}

TEST_CASE("polynomial heights of algebraic numbers") {
  const AlgNumber sqrt2(UPoly::from_integers({-2, 0, 1}), 1, 2);
  const auto h2 = height_poly_d(sqrt2, 2);
  REQUIRE(h2);
  CHECK(h2->height == 2);
  CHECK(h2->xi == std::vector<Rational>{0, -2});
  CHECK_FALSE(height_poly_d(sqrt2, 1));
  const auto h3 = height_poly_d(sqrt2, 3);
  REQUIRE(h3);
  CHECK(h3->height == 2);

  const AlgNumber golden(UPoly::from_integers({-1, -1, 1}), 1, 2);
  const auto hg = height_poly_d(golden, 2);
  REQUIRE(hg);
  CHECK(hg->height == 1);

  const AlgNumber cbrt2 = AlgNumber::parse("poly:-2,0,0,1;interval:1,2");
  CHECK_FALSE(height_poly_d(cbrt2, 2));
  CHECK(height_poly_d(cbrt2, 3)->height == 2);
}

TEST_CASE("degree-2 polynomial height of rationals matches a direct search") {
  oracle::Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const Rational a = rng.canonical_rational(4);
    const auto h = height_poly_d(a, 2);
    REQUIRE(h);
    // Witness lies on the defining relation.
    CHECK(a * a + h->xi[0] * a + h->xi[1] == 0);
    CHECK(h->height == height_point(h->xi));
    CHECK(h->height == poly2_brute(a, 40));
  }
}

TEST_CASE("lambda heights") {
  LambdaSpec indep;
  indep.d = 2;
  CHECK(height_lambda({q(1, 2), q(3, 5)}, indep).height == 5);

  // lambda = (1, 1/2): q = (1/2, 0) and q' = (0, 1) give the same value 1/2.
  LambdaSpec dep;
  dep.d = 2;
  dep.mode = LambdaSpec::Mode::Dependent;
  dep.relations = {{1, -2}};
  dep.values = std::vector<Rational>{1, q(1, 2)};
  const auto h = height_lambda({q(1, 2), 0}, dep);
  CHECK(h.height == 1);
  CHECK(h.witness[0] * 1 + h.witness[1] * q(1, 2) == q(1, 2));

  LambdaSpec bad = dep;
  bad.relations = {{1, 1}};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("min_height_affine never beats a direct search and returns a valid witness") {
  oracle::Rng rng(23);
  const auto pool = oracle::rationals_brute(12);
  for (int i = 0; i < 30; ++i) {
    const std::vector<Rational> base{rng.canonical_rational(9), rng.canonical_rational(9)};
    const std::vector<Rational> dir{rng.canonical_rational(5), 1};
    const auto r = min_height_affine(base, {dir});
    CHECK(r.height == height_point(r.witness));
    // witness - base is a multiple of dir (second entry of dir is 1).
    const Rational s = r.witness[1] - base[1];
    CHECK(r.witness[0] == base[0] + s * dir[0]);
    Integer brute = -1;
    for (const auto& t : pool) {
      const Integer h = height_point({base[0] + t * dir[0], base[1] + t * dir[1]});
      if (brute < 0 || h < brute) brute = h;
    }
    CHECK(r.height <= brute);
  }
}
