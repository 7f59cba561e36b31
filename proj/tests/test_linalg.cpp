#include "oracles.hpp"
#include "ratcover/heights.hpp"
#include "ratcover/linalg.hpp"

#include <doctest.h>

using namespace ratcover;

namespace {

Rational q(long a, long b) { return make_rational(a, b); }

QMatrix random_matrix(oracle::Rng& rng, std::size_t r, std::size_t c, long T) {
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.canonical_rational(T);
  return m;
}

QMatrix product(const QMatrix& a, const QMatrix& b) {
  QMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) m(i, j) += a(i, k) * b(k, j);
  return m;
}

// Largest r with a nonzero r x r minor.
std::size_t rank_by_minors(const QMatrix& m) {
  std::size_t best = 0;
  const std::size_t R = m.rows(), C = m.cols();
  for (unsigned rmask = 1; rmask < (1u << R); ++rmask)
    for (unsigned cmask = 1; cmask < (1u << C); ++cmask) {
      const auto k = static_cast<std::size_t>(__builtin_popcount(rmask));
      if (k != static_cast<std::size_t>(__builtin_popcount(cmask)) || k <= best) continue;
      QMatrix sub(k, k);
      for (std::size_t i = 0, si = 0; i < R; ++i) {
        if (!(rmask >> i & 1)) continue;
        for (std::size_t j = 0, sj = 0; j < C; ++j)
          if (cmask >> j & 1) sub(si, sj++) = m(i, j);
        ++si;
      }
      if (oracle::cofactor_det(sub) != 0) best = k;
    }
  return best;
}

}  // namespace

TEST_CASE("determinant agrees with cofactor expansion") {
  oracle::Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 6));
    const QMatrix m = random_matrix(rng, n, n, 9);
    CHECK(det(m) == oracle::cofactor_det(m));
  }
  CHECK(det(QMatrix::identity(4)) == 1);
  CHECK(det(QMatrix(2, 2, {1, 2, 2, 4})) == 0);
  CHECK_THROWS_AS(det(QMatrix(2, 3)), Error);
}

TEST_CASE("rank and kernel basis") {
  oracle::Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto r = static_cast<std::size_t>(rng.integer(1, 4));
    const auto c = static_cast<std::size_t>(rng.integer(1, 5));
    const auto k = static_cast<std::size_t>(rng.integer(1, 3));
    const QMatrix m = product(random_matrix(rng, r, k, 4), random_matrix(rng, k, c, 4));
    const std::size_t rk = rank(m);
    CHECK(rk == rank_by_minors(m));
    const auto ker = kernel_basis(m);
    CHECK(ker.size() == c - rk);
    for (const auto& v : ker) {
      for (std::size_t row = 0; row < r; ++row) {
        Rational s = 0;
        for (std::size_t j = 0; j < c; ++j) s += m(row, j) * v[j];
        CHECK(s == 0);
      }
      Integer g = 0;
      for (const auto& x : v) g = gcd(g, x);
      CHECK(g == 1);
      const auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
      REQUIRE(first != v.end());
      CHECK(*first > 0);
    }
    if (!ker.empty()) {
      QMatrix K(ker.size(), c);
      for (std::size_t a = 0; a < ker.size(); ++a)
        for (std::size_t j = 0; j < c; ++j) K(a, j) = ker[a][j];
      CHECK(rank(K) == ker.size());
    }
  }
}

TEST_CASE("monomial matrix columns follow the monomial order") {
  const QMatrix M = monomial_matrix({{q(1, 2), 3}}, 2, 2);
  const std::vector<Rational> want{1, q(1, 2), 3, q(1, 4), q(3, 2), 9};
  CHECK(M.entries() == want);
}

TEST_CASE("hypersurface canonical form and text round trip") {
  const auto h = Hypersurface::canonical(2, 2, {0, 0, -2, 2, 0, 0});
  CHECK(h.coeffs == std::vector<Integer>{0, 0, 1, -1, 0, 0});
  CHECK(h.serialize() == "2 2; 0 0 1 -1 0 0");
  CHECK(Hypersurface::parse(h.serialize()) == h);
  CHECK(h.evaluate({q(1, 3), q(1, 9)}) == 0);
  CHECK(h.evaluate({1, 2}) == 1);
  CHECK_THROWS_AS(Hypersurface::parse("2 2; 0 0 -1 1 0 0"), Error);
  CHECK_THROWS_AS(Hypersurface::parse("2 2; 0 0 2 -2 0 0"), Error);
  CHECK_THROWS_AS(Hypersurface::parse("2 2; 0 0 1 -1 0"), Error);
  CHECK_THROWS_AS(Hypersurface::canonical(2, 1, {0, 0, 0}), Error);
}

TEST_CASE("fitting recovers the parabola and always fits fewer than D points") {
  std::vector<QPoint> pts;
  for (long a : {-3, -1, 0, 2, 5, 7}) pts.push_back({q(a, 7), q(a * a, 49)});
  const auto h = fit_hypersurface(pts, 2, 2);
  REQUIRE(h);
  CHECK(h->coeffs == std::vector<Integer>{0, 0, 1, -1, 0, 0});
  oracle::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    std::vector<QPoint> s;
    const auto k = rng.integer(1, 5);
    for (long j = 0; j < k; ++j) s.push_back({rng.canonical_rational(20), rng.canonical_rational(20)});
    const auto f = fit_hypersurface(s, 2, 2);
    REQUIRE(f);
    CHECK(f->vanishes_on(s));
  }
  // Seven generic points lie on no conic.
  std::vector<QPoint> g{{0, 1}, {1, 0}, {2, 3}, {3, 7}, {5, 1}, {q(1, 2), 4}, {7, 7}};
  CHECK_FALSE(fit_hypersurface(g, 2, 2));
  CHECK_FALSE(on_common_hypersurface(g, 2, 2));
}

TEST_CASE("common hypersurface test agrees with the minor oracle") {
  oracle::Rng rng(4);
  int yes = 0, no = 0;
  for (int i = 0; i < 150; ++i) {
    const unsigned e = static_cast<unsigned>(rng.integer(1, 2));
    const auto size = rng.integer(1, 8);
    std::vector<QPoint> s;
    const bool on_curve = rng.integer(0, 1) == 1;
    for (long j = 0; j < size; ++j) {
      const Rational x = rng.canonical_rational(20);
      s.push_back({x, on_curve ? Rational(x * x) : rng.canonical_rational(20)});
    }
    const bool got = on_common_hypersurface(s, 2, e);
    CHECK(got == oracle::all_minors_vanish(s, 2, e));
    (got ? yes : no)++;
  }
  CHECK(yes > 10);
  CHECK(no > 10);
}

TEST_CASE("denominator bound clears the determinant") {
  oracle::Rng rng(5);
  for (int i = 0; i < 60; ++i) {
    const unsigned n = static_cast<unsigned>(rng.integer(1, 2)), e = static_cast<unsigned>(rng.integer(1, 2));
    const long t = rng.integer(1, 10);
    const std::size_t D = to_ulong(dim_D(n, e), "D");
    std::vector<QPoint> pts;
    for (std::size_t j = 0; j < D; ++j) {
      QPoint p;
      for (unsigned c = 0; c < n; ++c) p.push_back(rng.canonical_rational(t));
      pts.push_back(p);
    }
    const auto r = denominator_bound(pts, n, e, t);
    Integer s = 1;
    for (const auto& p : pts)
      for (const auto& x : p) s *= ipow(x.get_den(), e);
    CHECK(r.s == s);
    CHECK(r.check);
    CHECK(s <= ipow(Integer(t), n * e * D));
    const Rational sd = Rational(s) * oracle::cofactor_det(monomial_matrix(pts, n, e));
    CHECK(sd.get_den() == 1);
  }
  CHECK_THROWS_AS(denominator_bound({{q(1, 2)}}, 1, 1, 2), Error);
  CHECK_THROWS_AS(denominator_bound({{q(1, 3)}, {0}}, 1, 1, 2), Error);
}

TEST_CASE("det_of_sum expands the determinant of a sum") {
  oracle::Rng rng(6);
  for (int i = 0; i < 60; ++i) {
    const auto N = static_cast<std::size_t>(rng.integer(1, 5));
    const auto parts = rng.integer(1, 3);
    std::vector<QMatrix> summands;
    std::vector<unsigned> caps;
    QMatrix total(N, N);
    for (long p = 0; p < parts; ++p) {
      const auto k = static_cast<std::size_t>(rng.integer(1, static_cast<long>(N)));
      const QMatrix m = product(random_matrix(rng, N, k, 5), random_matrix(rng, k, N, 5));
      summands.push_back(m);
      caps.push_back(static_cast<unsigned>(k + static_cast<std::size_t>(rng.integer(0, 1))));
      total = total + m;
    }
    CHECK(det_of_sum(summands, caps) == det(total));
  }
  const QMatrix I = QMatrix::identity(3);
  CHECK_THROWS_AS(det_of_sum({I}, {2}), Error);
}
