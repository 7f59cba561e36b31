#include "oracles.hpp"
#include "ratcover/experiment.hpp"
#include "ratcover/parametrize.hpp"

#include <doctest.h>

using namespace ratcover;

namespace {

Rational q(long a, long b) { return make_rational(a, b); }

StrongParam line(const Rational& slope) {
  const MPoly t = MPoly::var(1, 0);
  return StrongParam{"line", 1, 2, {RatFuncM::polynomial(q(1, 2) * t), RatFuncM::polynomial(slope * t)}, nullptr,
                     std::nullopt};
}

// Partial Bell polynomials by B_{n,k} = sum_i C(n-1, i-1) x_i B_{n-i,k-1}.
MPoly bell(unsigned n, unsigned k, unsigned nv) {
  if (n == 0 && k == 0) return MPoly::constant(nv, 1);
  if (n == 0 || k == 0) return MPoly(nv);
  MPoly acc(nv);
  for (unsigned i = 1; i + k <= n + 1; ++i)
    acc = acc + Rational(oracle::pascal(n - 1, i - 1)) * MPoly::var(nv, i - 1) * bell(n - i, k - 1, nv);
  return acc;
}

RatFunc1 random_ratfunc(oracle::Rng& rng) {
  RatFunc1 f;
  std::vector<Rational> n, d{rng.integer(2, 5)};
  for (int i = 0; i < 3; ++i) n.push_back(rng.canonical_rational(4));
  d.push_back(rng.integer(-1, 1));
  d.push_back(1);  // c + b t + t^2 with c >= 2, |b| <= 1 has no real root
  f.num = UPoly(n);
  f.den = UPoly(d);
  return f;
}

}  // namespace

TEST_CASE("chart evaluation, derivatives and checked preimages") {
  const BuiltinSet s = builtin("parabola");
  const StrongParam& f = *s.chart;
  CHECK(f({1}) == QPoint{q(1, 3), q(1, 9)});
  CHECK(f({q(1, 2)}) == QPoint{0, 0});
  // x = (2t-1)/3, y = x^2: x' = 2/3, y' = 4(2t-1)/9, y'' = 8/9.
  CHECK(f.derivative(0, MultiIndex{{1}}, QPoint{q(1, 4)}) == q(2, 3));
  CHECK(f.derivative(1, MultiIndex{{1}}, QPoint{q(1, 4)}) == q(-2, 9));
  CHECK(f.derivative(1, MultiIndex{{2}}, QPoint{q(3, 5)}) == q(8, 9));
  CHECK(f.checked_preimage({q(1, 3), q(1, 9)}) == QPoint{1});
  CHECK_FALSE(f.checked_preimage({q(1, 3), q(1, 8)}));
  CHECK_FALSE(f.checked_preimage({1, 1}));  // preimage t = 2 is outside [0,1]
}

TEST_CASE("interval evaluation of a chart encloses exact values") {
  const StrongParam f = *builtin("circle-arc").chart;
  oracle::Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const Rational a = rng.unit(8) * q(7, 8);
    const std::vector<Interval> box{Interval(a, a + q(1, 8))};
    const auto y = f.eval(box);
    const QPoint x = f({a + q(1, 8) * rng.unit(10)});
    CHECK(y[0].contains(x[0]));
    CHECK(y[1].contains(x[1]));
  }
}

TEST_CASE("derivative certification") {
  const auto affine = certify(line(q(1, 3)), 4, 1);
  CHECK(affine.method == CertMethod::Exact);
  CHECK(affine.order == 4);
  CHECK_THROWS_AS(certify(line(2), 2, 1), CertificationError);
  CHECK(certify(line(2), 2, 2).bound == 2);

  for (const auto& name : {"parabola", "circle-arc", "cubic", "affine", "lambda-line"}) {
    const BuiltinSet s = builtin(name);
    const StrongParam p = certified_chart(s, s.default_e);
    REQUIRE(p.certificate);
    CHECK(p.certificate->bound == 1);
    CHECK(p.certificate->order == profile(p.m, p.n, s.default_e).k);
  }
  CHECK(certified_chart(builtin("parabola"), 2).certificate->method == CertMethod::IntervalVerified);

  // x = (16 - t^2)/(16 + t^2) reaches 1 at t = 0, so a bound of 1 is tight
  // there and the bisection proof must give up rather than guess.
  const MPoly t = MPoly::var(1, 0);
  const MPoly c16 = MPoly::constant(1, 16);
  StrongParam tight{"tight", 1, 1, {RatFuncM::quotient(c16 - t * t, c16 + t * t)}, nullptr, std::nullopt};
  CHECK_THROWS_AS(certify(tight, 1, 1), CertificationError);
  CHECK_NOTHROW(certify(tight, 1, q(11, 10)));
}

TEST_CASE("coordinate inversion") {
  CHECK(invert_coordinates({2, q(1, 3), 5}, {0, 1}) == QPoint{q(1, 2), 3, 5});
  CHECK(invert_coordinates({2, 3}, {}) == QPoint{2, 3});
  CHECK_THROWS_AS(invert_coordinates({0, 1}, {0}), Error);
  CHECK_THROWS_AS(invert_coordinates({1, 1}, {2}), Error);
}

TEST_CASE("rescaling to unit derivative bounds") {
  // f(t) = (t^3, t/2): |f| <= 1 and |f^(j)| <= 6 for j <= 3.
  const MPoly t = MPoly::var(1, 0);
  StrongParam f{"cube", 1, 2, {RatFuncM::polynomial(t * t * t), RatFuncM::polynomial(q(1, 2) * t)},
                [](const QPoint& x) -> std::optional<QPoint> { return QPoint{2 * x[1]}; }, std::nullopt};
  CHECK_THROWS_AS(certify(f, 3, 1), CertificationError);
  const auto pieces = rescale_to_unit(f, 6, 3);
  REQUIRE(pieces.size() == 7);
  for (const auto& p : pieces) {
    REQUIRE(p.certificate);
    CHECK(p.certificate->method == CertMethod::Declared);
    CHECK(certify(p, 3, 1).bound == 1);  // the declared bound is in fact provable
  }
  oracle::Rng rng(9);
  for (int i = 0; i < 40; ++i) {
    const Rational s = rng.unit(12);
    const QPoint x = f({s});
    bool found = false;
    for (const auto& p : pieces)
      if (auto u = p.checked_preimage(x)) found = found || p(*u) == x;
    CHECK(found);
  }
  // Two parameters: (c+1)^2 pieces.
  StrongParam g{"pair", 2, 3,
                {RatFuncM::polynomial(MPoly::var(2, 0)), RatFuncM::polynomial(MPoly::var(2, 1)),
                 RatFuncM::polynomial(MPoly::var(2, 0) * MPoly::var(2, 1))},
                nullptr, std::nullopt};
  CHECK(rescale_to_unit(g, 2, 2).size() == 9);
}

TEST_CASE("chain rule polynomials are the partial Bell polynomials") {
  for (unsigned k = 1; k <= 6; ++k) {
    const auto p = chain_rule_polys(k);
    for (unsigned i = 1; i <= k; ++i) CHECK_MESSAGE(p[i][k] == bell(k, i, k), "i=" << i << " k=" << k);
  }
  const auto p3 = chain_rule_polys(3);
  MPoly want(3);
  want.add_term({1, 1, 0}, 3);  // p_23 = 3 x1 x2
  CHECK(p3[2][3] == want);
}

TEST_CASE("derivatives of compositions match symbolic composition") {
  oracle::Rng rng(12);
  for (int i = 0; i < 30; ++i) {
    const RatFunc1 f = random_ratfunc(rng), g = random_ratfunc(rng);
    RatFunc1 h = f.compose(g);
    for (unsigned k = 1; k <= 4; ++k) {
      h = h.derivative();
      const Rational t = rng.canonical_rational(5);
      CHECK(compose_derivative(f, g, k, t) == h(t));
    }
  }
}
