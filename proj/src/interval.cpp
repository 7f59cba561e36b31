#include "ratcover/interval.hpp"

#include <algorithm>

namespace ratcover {

Interval::Interval(const Rational& a, const Rational& b) : lo(a), hi(b) {
  if (hi < lo) throw Error("interval with lo > hi");
}

unsigned long& Interval::rounding_bits() {
  static unsigned long bits = 160;
  return bits;
}

Rational Interval::mag() const { return std::max(abs(lo), abs(hi)); }

Interval Interval::rounded() const {
  const unsigned long p = rounding_bits();
  Interval r;
  r.lo = lo.get_den() == 1 ? lo : floor_dyadic(lo, p);
  r.hi = hi.get_den() == 1 ? hi : ceil_dyadic(hi, p);
  return r;
}

std::string Interval::to_string() const { return "[" + ratcover::to_string(lo) + ", " + ratcover::to_string(hi) + "]"; }

Interval operator+(const Interval& a, const Interval& b) {
  Interval r;
  r.lo = a.lo + b.lo;
  r.hi = a.hi + b.hi;
  return r;
}

Interval operator-(const Interval& a) {
  Interval r;
  r.lo = -a.hi;
  r.hi = -a.lo;
  return r;
}

Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

Interval operator*(const Interval& a, const Interval& b) {
  if (a.is_point() && b.is_point()) return Interval(a.lo * b.lo);
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Interval r;
  r.lo = *std::min_element(p, p + 4);
  r.hi = *std::max_element(p, p + 4);
  return r.rounded();
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw IntervalError("interval division by an interval containing zero: " + b.to_string());
  if (a.is_point() && b.is_point()) return Interval(a.lo / b.lo);
  Interval inv;
  inv.lo = 1 / b.hi;
  inv.hi = 1 / b.lo;
  return a * inv;
}

Interval ipow(const Interval& a, unsigned e) {
  if (e == 0) return Interval(Rational(1));
  if (a.is_point()) return Interval(rpow(a.lo, e));
  Rational l = rpow(a.lo, e), h = rpow(a.hi, e);
  Interval r;
  if (e % 2 == 1) {
    r.lo = l;
    r.hi = h;
  } else if (a.lo >= 0) {
    r.lo = l;
    r.hi = h;
  } else if (a.hi <= 0) {
    r.lo = h;
    r.hi = l;
  } else {
    r.lo = 0;
    r.hi = std::max(l, h);
  }
  return r.rounded();
}

Interval hull(const Interval& a, const Interval& b) {
  Interval r;
  r.lo = std::min(a.lo, b.lo);
  r.hi = std::max(a.hi, b.hi);
  return r;
}

Interval eval(const UPoly& p, const Interval& x) {
  if (x.is_point() || p.degree() <= 0) return Interval(p(x.lo));
  const Rational c = x.mid();
  const Rational w = x.hi - c;
  // q(h) = p(c + h), h in [-w, w], by repeated synthetic division.
  std::vector<Rational> q = p.coeffs();
  const std::size_t d = q.size() - 1;
  if (c != 0)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = d; j-- > i;) q[j] += c * q[j + 1];
  Interval acc(q[0]);
  Rational wpow = 1;
  for (std::size_t i = 1; i <= d; ++i) {
    wpow *= w;
    const Rational& ci = q[i];
    if (ci == 0) continue;
    Rational t = abs(ci) * wpow;
    Interval term;
    if (i % 2 == 1) {
      term.lo = -t;
      term.hi = t;
    } else if (ci > 0) {
      term.lo = 0;
      term.hi = t;
    } else {
      term.lo = -t;
      term.hi = 0;
    }
    acc = acc + term;
  }
  return acc.rounded();
}

Interval eval(const RatFunc1& f, const Interval& x) { return eval(f.num, x) / eval(f.den, x); }

}  // namespace ratcover
