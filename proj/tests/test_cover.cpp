#include "oracles.hpp"
#include "ratcover/certificate.hpp"
#include "ratcover/cover.hpp"
#include "ratcover/enumerate.hpp"
#include "ratcover/experiment.hpp"

#include <doctest.h>

#include <sstream>

using namespace ratcover;

namespace {

Rational q(long a, long b) { return make_rational(a, b); }

// Smallest j with K T^{neD} <= 2^{jB}, by counting up.
unsigned long radius_exponent_brute(const Integer& K, const ExponentProfile& p, const Integer& T) {
  const Integer X = K * ipow(T, static_cast<unsigned long>(p.n) * p.e * p.D);
  const unsigned long B = p.B.get_ui();
  unsigned long j = 0;
  while (ipow(Integer(2), j * B) < X) ++j;
  return j;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::string join(const std::vector<std::string>& ls) {
  std::string s;
  for (const auto& l : ls) s += l + "\n";
  return s;
}

struct Parabola {
  CoverCertificate cert;
  std::string text, points;
};

Parabola parabola_cover(long T) {
  const BuiltinSet s = builtin("parabola");
  const StrongParam f = certified_chart(s, 2);
  const auto pts = set_points(s.predicate, Integer(T));
  Parabola p{cover_points(f, 2, Integer(T), pts), "", ""};
  p.text = serialize_certificate(p.cert);
  p.points = serialize_preimages(p.cert);
  return p;
}

}  // namespace

TEST_CASE("radius is the largest admissible power of two") {
  for (unsigned e = 1; e <= 3; ++e) {
    const auto p = profile(1, 2, e, JMode::Exact);
    for (long T : {1, 2, 3, 10, 30, 1000}) {
      const Rational r = radius_r(p.K, p, Integer(T));
      CHECK(r == make_rational(1, ipow(Integer(2), radius_exponent_brute(p.K, p, Integer(T)))));
    }
  }
  // A tiny K admits r = 1 at T = 1.
  const auto p = profile(1, 2, 1, JMode::Exact);
  CHECK(radius_r(Integer(1), p, Integer(1)) == 1);
  CHECK_THROWS_AS(radius_r(p.K, p, Integer(0)), Error);
}

TEST_CASE("count bound is the least N with N^B >= K^m T^{mneD}") {
  for (unsigned e = 1; e <= 3; ++e) {
    const auto p = profile(1, 2, e, JMode::Exact);
    const unsigned long B = p.B.get_ui();
    for (long T : {1, 3, 10, 30}) {
      const Integer X = p.K * ipow(Integer(T), 2ul * e * p.D);
      const Integer N = count_bound(p.K, p, Integer(T));
      CHECK(ipow(N, B) >= X);
      CHECK(ipow(N - 1, B) < X);
    }
  }
}

TEST_CASE("tiling covers the cube and box_of picks the first containing box") {
  oracle::Rng rng(31);
  for (unsigned m = 1; m <= 2; ++m)
    for (unsigned j = 0; j <= 4; ++j) {
      const Rational r = make_rational(1, ipow(Integer(2), j));
      const Tiling tiling(m, r);
      // Boxes of side 2r = 2^{1-j}: 2^{j-1} per axis.
      const std::size_t per = j == 0 ? 1 : std::size_t(1) << (j - 1);
      CHECK(tiling.per_axis() == per);
      CHECK(tiling.box_count() == (m == 1 ? per : per * per));
      for (std::size_t b = 0; b < tiling.box_count(); ++b)
        for (const auto& c : tiling.center(b)) CHECK((tiling.per_axis() == 1 || (r <= c && c <= 1 - r)));
      for (int i = 0; i < 40; ++i) {
        QPoint t;
        for (unsigned a = 0; a < m; ++a) t.push_back(i < 4 ? Rational(i % 2) : rng.unit(9));
        const std::size_t b = tiling.box_of(t);
        CHECK(tiling.contains(b, t));
        for (std::size_t c = 0; c < b; ++c) CHECK_FALSE(tiling.contains(c, t));
      }
    }
  // r = 3/10 is not a power of two: two boxes, the second pushed back inside.
  const Tiling odd(1, q(3, 10));
  CHECK(odd.per_axis() == 2);
  CHECK(odd.axis_center(1) == q(7, 10));
  CHECK_THROWS_AS(Tiling(1, 0), Error);
}

TEST_CASE("cover of the parabola finds y = x^2 and verifies") {
  const Hypersurface want = Hypersurface::canonical(2, 2, {0, 0, -1, 1, 0, 0});
  for (long T : {3, 10, 30}) {
    const auto p = parabola_cover(T);
    REQUIRE(p.cert.hypersurfaces.size() == 1);
    CHECK(p.cert.hypersurfaces[0] == want);
    CHECK(p.cert.violations.empty());
    CHECK(Integer(p.cert.hypersurfaces.size()) <= p.cert.params.count_bound);
    // Every point is the image of its recorded preimage.
    const StrongParam f = *builtin("parabola").chart;
    for (std::size_t i = 0; i < p.cert.points.size(); ++i) CHECK(f(p.cert.preimages[i]) == p.cert.points[i]);
    const auto v = verify_certificate(p.text, p.points);
    CHECK_MESSAGE(v.ok, v.message);
  }
}

TEST_CASE("certificate text round trip") {
  const auto p = parabola_cover(30);
  const auto c = parse_certificate(p.text);
  CHECK(c.m == 1);
  CHECK(c.n == 2);
  CHECK(c.e == 2);
  CHECK(c.T == 30);
  CHECK(c.r == p.cert.params.r);
  CHECK(c.B == p.cert.params.profile.B);
  CHECK(c.points == p.cert.points);
  CHECK(c.box == p.cert.box);
  CHECK(c.assignment == p.cert.assignment);
  CHECK(c.hypersurfaces == p.cert.hypersurfaces);
}

TEST_CASE("verifier rejects tampered certificates") {
  const auto p = parabola_cover(10);
  const auto L = lines_of(p.text);
  const auto P = lines_of(p.points);
  REQUIRE(L.size() == 5);

  auto rejects = [&](const std::string& text, const std::string& points, const std::string& needle) {
    const auto v = verify_certificate(text, points);
    CHECK_FALSE(v.ok);
    CHECK_MESSAGE(v.message.find(needle) != std::string::npos, v.message);
  };

  // Wrong hypersurface: the first point off it is named.
  auto bent = L;
  bent[1] = "2 2; 0 0 1 -2 0 0";
  rejects(join(bent), p.points, "does not lie on h0");

  // Truncated point line.
  auto cut = L;
  cut[3] = cut[3].substr(0, cut[3].find("->"));
  rejects(join(cut), p.points, "line 4");

  // Radius not the certified one.
  auto wide = L;
  wide[0].replace(wide[0].find("r=1/1024"), 8, "r=1/512");
  rejects(join(wide), p.points, "r is not");

  // Preimage moved out of its box.
  auto moved = P;
  moved[0] = moved[0].substr(0, moved[0].find('@')) + "@ 1/7";
  rejects(p.text, join(moved), "");

  // Point list shorter than the certificate.
  rejects(p.text, join({P[0], P[1]}), "length");

  // A point above the height bound.
  auto high = L;
  high[0].replace(0, high[0].find(';'), "1 2 2 2");
  rejects(join(high), p.points, "");
}

TEST_CASE("clustered determinants of the affine chart stay below K r^B") {
  const StrongParam f = certified_chart(builtin("affine"), 2);
  for (const Rational& r : {q(1, 4), q(1, 16)}) {
    const auto rep = cluster_determinant_check(f, 2, r, 20, 7);
    CHECK(rep.trials == 20);
    CHECK(rep.failures == 0);
    CHECK(rep.max_abs_det < rep.bound);
  }
}
