#include "oracles.hpp"
#include "ratcover/algebraic.hpp"
#include "ratcover/enumerate.hpp"
#include "ratcover/experiment.hpp"
#include "ratcover/heights.hpp"

#include <doctest.h>

#include <set>

using namespace ratcover;

namespace {

Rational q(long a, long b) { return make_rational(a, b); }

std::vector<QPoint> sorted(std::vector<QPoint> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// All points of rationals_brute(T)^n accepted by `test`.
std::vector<QPoint> brute_points(unsigned n, unsigned long T, const std::function<bool(const QPoint&)>& test) {
  const auto pool = oracle::rationals_brute(T);
  std::vector<QPoint> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    QPoint p(n);
    for (unsigned i = 0; i < n; ++i) p[i] = pool[idx[i]];
    if (test(p)) out.push_back(p);
    unsigned pos = 0;
    while (pos < n && ++idx[pos] == pool.size()) idx[pos++] = 0;
    if (pos == n) break;
  }
  return sorted(out);
}

}  // namespace

TEST_CASE("|Q(T)| for small T") {
  CHECK(rationals_up_to(1).size() == 3);
  CHECK(rationals_up_to(2).size() == 7);
  CHECK(rationals_up_to(3).size() == 15);
  CHECK(rationals_up_to(4).size() == 23);
  for (unsigned long T = 1; T <= 40; ++T) CHECK(rationals_up_to(T).size() == oracle::coprime_pairs(T));
}

TEST_CASE("stream order, uniqueness and restart") {
  const auto all = rationals_up_to(25);
  std::set<Rational> uniq(all.begin(), all.end());
  CHECK(uniq.size() == all.size());
  const auto brute = oracle::rationals_brute(25);
  CHECK(std::set<Rational>(brute.begin(), brute.end()) == uniq);
  for (std::size_t i = 1; i < all.size(); ++i) {
    CHECK(stream_less(all[i - 1], all[i]));
    CHECK(height_rat(all[i - 1]) <= height_rat(all[i]));
  }
  CHECK(all[0] == 0);
  CHECK(all[1] == 1);
  CHECK(all[2] == -1);
  RationalStream s(5);
  std::vector<Rational> first, second;
  while (auto x = s.next()) first.push_back(*x);
  s.restart();
  while (auto x = s.next()) second.push_back(*x);
  CHECK(first == second);
  CHECK(first == rationals_up_to(5));
  CHECK_THROWS_AS(RationalStream(0), Error);
}

TEST_CASE("polynomial parsing") {
  const MPoly p = parse_mpoly("x^2 + 2xy - 3/4", 2);
  MPoly want(2);
  want.add_term({2, 0}, 1);
  want.add_term({1, 1}, 2);
  want.add_term({0, 0}, q(-3, 4));
  CHECK(p == want);
  CHECK(parse_mpoly("(x1 - 1)*(x1 + 1)", 1) == parse_mpoly("x1^2 - 1", 1));
  CHECK(parse_mpoly("y/2", 2) == q(1, 2) * MPoly::var(2, 1));
  CHECK_THROWS_AS(parse_mpoly("x^", 1), Error);
  CHECK_THROWS_AS(parse_mpoly("x/y", 2), Error);
}

TEST_CASE("predicate enumeration matches brute force") {
  const auto circle = parse_predicate("x^2+y^2-1=0; y>0");
  CHECK(circle.arity() == 2);
  for (unsigned long T : {5ul, 13ul, 25ul}) {
    const auto pts = set_points(circle, T);
    const auto brute = brute_points(2, T, [](const QPoint& p) { return p[0] * p[0] + p[1] * p[1] == 1 && p[1] > 0; });
    CHECK(sorted(pts) == brute);
  }
  const auto band = parse_predicate("x - y < 0; x > 0", 2);
  CHECK(sorted(set_points(band, 6)) ==
        brute_points(2, 6, [](const QPoint& p) { return p[0] - p[1] < 0 && p[0] > 0; }));
  CHECK(parse_predicate("power-graph").kind() == MembershipPredicate::Kind::PowerGraph);
  CHECK_THROWS_AS(parse_predicate("x ~ 0"), Error);
}

TEST_CASE("point stream yields odometer order lazily") {
  const auto pred = parse_predicate("x - y = 0", 2);
  PointStream s(pred, 2);
  std::vector<QPoint> got;
  while (auto p = s.next()) got.push_back(*p);
  REQUIRE(got.size() == 7);
  const auto pool = rationals_up_to(2);
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == QPoint{pool[i], pool[i]});
}

TEST_CASE("built-in sets: solver enumeration equals odometer enumeration") {
  for (const auto& name : builtin_names()) {
    if (name == "powers-ab") continue;
    const BuiltinSet set = builtin(name);
    const MembershipPredicate& pred = set.predicate;
    const unsigned long T = set.chart->m == 2 ? 3 : 17;
    const auto fast = set_points(pred, T);
    const auto slow = brute_points(pred.arity(), T, [&](const QPoint& p) { return pred(p); });
    CHECK_MESSAGE(sorted(fast) == slow, name);
    for (const auto& p : fast) {
      const auto t = set.chart->checked_preimage(p);
      CHECK_MESSAGE(t.has_value(), name);
    }
  }
}

TEST_CASE("power-graph points match brute force") {
  for (unsigned long T : {10ul, 30ul, 64ul, 125ul}) {
    const auto pts = power_curve_points(T);
    CHECK(sorted(pts) == oracle::power_points_brute(T));
    const auto pred = MembershipPredicate::power_graph();
    for (const auto& p : pts) CHECK(pred(p));
  }
  CHECK(power_curve_points(10).empty());
  const auto p125 = power_curve_points(125);
  CHECK(std::find(p125.begin(), p125.end(), QPoint{q(25, 16), q(3, 2), q(125, 64)}) != p125.end());
  const auto pred = MembershipPredicate::power_graph();
  CHECK_FALSE(pred({q(3, 2), q(3, 2), q(3, 2)}));
  CHECK_FALSE(pred({q(4, 1), q(1, 2), q(2, 1)}));
}

TEST_CASE("projection pi(lambda, a)") {
  CHECK(project_lambda(std::vector<Rational>{1, q(1, 2)}, {{q(1, 3), 2}, {0, -1}}) ==
        std::vector<Rational>{q(4, 3), q(-1, 2)});
  const AlgNumber sqrt2(UPoly::from_integers({-2, 0, 1}), 1, 2);
  const auto y = project_lambda({Rational(1), sqrt2}, {{q(1, 2), q(1, 3)}, {q(2, 3), q(1, 2)}});
  const auto f = std::make_shared<const AlgNumber>(sqrt2);
  const NFElement a = NFElement::generator(f);
  CHECK(y[0] == NFElement::constant(f, q(1, 2)) + q(1, 3) * a);
  CHECK(y[1] == a * y[0]);
  const AlgNumber sqrt3(UPoly::from_integers({-3, 0, 1}), 1, 2);
  CHECK_THROWS_AS(project_lambda({sqrt2, sqrt3}, {{1, 1}}), Error);
}

TEST_CASE("point text round trip") {
  const QPoint p{q(-3, 7), 0, q(5, 1)};
  CHECK(format_point(p) == "-3/7,0/1,5/1");
  CHECK(parse_point(format_point(p)) == p);
  CHECK(parse_point(" 1/2 , -4 ") == QPoint{q(1, 2), -4});
  CHECK_THROWS_AS(parse_point("1/0"), Error);
}
