#include "oracles.hpp"
#include "ratcover/bound_constant.hpp"
#include "ratcover/cover.hpp"
#include "ratcover/exponents.hpp"

#include <doctest.h>

#include <cmath>

using namespace ratcover;

TEST_CASE("monomial order is graded and lexicographically decreasing") {
  const auto ms = monomials(2, 2);
  const std::vector<std::vector<unsigned>> want{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  REQUIRE(ms.size() == want.size());
  for (std::size_t i = 0; i < ms.size(); ++i) CHECK(ms[i].entries == want[i]);
  CHECK(monomials(1, 2).size() == 3);
  const auto z = monomials(3, 0);
  REQUIRE(z.size() == 1);
  CHECK(z[0].entries == std::vector<unsigned>{0, 0, 0});
}

TEST_CASE("monomial lists match brute-force enumeration") {
  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned e = 0; e <= 6; ++e) {
      const auto ms = monomials(n, e);
      CHECK(Integer(ms.size()) == oracle::count_up_to(n, e));
      for (std::size_t i = 1; i < ms.size(); ++i) {
        const unsigned a = ms[i - 1].order(), b = ms[i].order();
        CHECK(a <= b);
        if (a == b) CHECK(ms[i - 1].entries > ms[i].entries);
      }
    }
}

TEST_CASE("D, E and V agree with direct counts") {
  CHECK(dim_D(2, 2) == 6);
  CHECK(dim_E(2, 3) == 4);
  CHECK(vee_V(1, 5) == 15);
  for (unsigned n = 1; n <= 5; ++n)
    for (unsigned e = 0; e <= 7; ++e) {
      CHECK(dim_D(n, e) == oracle::count_up_to(n, e));
      CHECK(dim_E(n, e) == oracle::count_exactly(n, e));
      Integer v = 0;
      for (unsigned i = 0; i <= e; ++i) v += i * oracle::count_exactly(n, i);
      CHECK(vee_V(n, e) == v);
    }
}

TEST_CASE("binomial conventions at negative arguments") {
  CHECK(binomial(-1, -1) == 1);
  CHECK(binomial(4, -1) == 0);
  CHECK(binomial(3, 5) == 0);
  for (long n = 0; n <= 20; ++n)
    for (long k = 0; k <= n; ++k) CHECK(binomial(n, k) == oracle::pascal(n, k));
  // E(n, e) = binom(e+n-1, n-1): E(1, 0) uses binom(0, 0), E(0, 0) uses binom(-1,-1).
  CHECK(dim_E(0, 0) == 1);
}

TEST_CASE("exponent identities") {
  for (long n = 1; n <= 6; ++n) {
    for (long e = 0; e <= 12; ++e) {
      Integer s = 0;
      for (long i = 0; i <= e; ++i) s += dim_E(n, i);
      CHECK(dim_D(n, e) == s);
    }
    for (long i = 1; i <= 12; ++i) CHECK(i * dim_E(n, i) == n * dim_E(n + 1, i - 1));
    CHECK(vee_V(n, 0) == 0);
    for (long e = 1; e <= 12; ++e) CHECK(vee_V(n, e) == n * dim_D(n + 1, e - 1));
  }
}

TEST_CASE("b sandwich and examples") {
  CHECK(b_of(1, 2, 2) == 5);
  CHECK(b_of(2, 3, 3) == 4);
  CHECK(b_of(1, 1, 1) == 1);
  for (unsigned m = 1; m <= 4; ++m)
    for (unsigned n = 1; n <= 4; ++n)
      for (unsigned e = 1; e <= 20; ++e) {
        const long b = static_cast<long>(b_of(m, n, e));
        CHECK(dim_D(m, b) <= dim_D(n, e));
        CHECK(dim_D(n, e) < dim_D(m, b + 1));
      }
}

TEST_CASE("profile examples") {
  const auto p = profile(1, 2, 2);
  CHECK(p.D == 6);
  CHECK(p.b == 5);
  CHECK(p.k == 6);
  CHECK(p.B == 15);
  CHECK(p.epsilon == Rational(8, 5));
  const auto q = profile(2, 3, 3);
  CHECK(q.B == 65);
  CHECK(q.epsilon == Rational(72, 13));
  CHECK_THROWS_AS(profile(2, 2, 1), Error);
  CHECK_THROWS_AS(profile(3, 2, 1), Error);
}

TEST_CASE("epsilon(1,2,e) = 8/(e+3) by definition-level evaluation") {
  Rational prev = 100;
  for (long e = 1; e <= 50; ++e) {
    // D(1,b) = b+1 = D(2,e) forces b = D - 1 and B = V(1, b) = b(b+1)/2.
    const Integer D = oracle::pascal(e + 2, 2);
    const Integer b = D - 1;
    const Integer B = b * (b + 1) / 2;
    Rational eps(2 * e * D, B);
    eps.canonicalize();
    const auto p = profile(1, 2, static_cast<unsigned>(e));
    CHECK(p.epsilon == eps);
    CHECK(p.epsilon == make_rational(8, e + 3));
    CHECK(p.epsilon < prev);
    prev = p.epsilon;
  }
  CHECK(profile(1, 2, 50).epsilon < Rational(1, 6));
}

TEST_CASE("b(2,3,40) follows the asymptotic formula") {
  const double b = static_cast<double>(b_of(2, 3, 40));
  const double ratio = b / std::sqrt(2.0 * 40 * 40 * 40 / 6.0);
  CHECK(ratio >= 0.9);
  CHECK(ratio <= 1.15);
}

TEST_CASE("#J by occupancy DP matches brute-force tuples") {
  struct Case {
    unsigned m, n, e;
  };
  for (const auto& c : {Case{1, 2, 1}, Case{1, 2, 2}, Case{2, 3, 1}, Case{1, 3, 1}, Case{2, 4, 1}}) {
    const auto p = profile(c.m, c.n, c.e, JMode::Exact);
    CHECK(p.J_exact);
    CHECK(p.J_count == oracle::J_brute(c.m, static_cast<unsigned>(p.D), static_cast<unsigned>(p.b)));
    const auto q = profile(c.m, c.n, c.e, JMode::Bound);
    CHECK_FALSE(q.J_exact);
    CHECK(q.J_count == ipow(Integer(p.b + 2), p.D));
    CHECK(p.J_count <= q.J_count);
  }
}

TEST_CASE("bound constant K = #J D! c^D") {
  const auto p = profile(1, 2, 2, JMode::Exact);
  const Integer c = ipow(dim_D(1, 6), 2);
  CHECK(p.c == c);
  CHECK(p.K == p.J_count * 720 * ipow(c, 6));
}
