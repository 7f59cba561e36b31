// Closed intervals with rational endpoints. Arithmetic is exact and then
// rounded outward onto a dyadic grid, so enclosures are rigorous while
// endpoint sizes stay bounded.
#pragma once

#include "ratcover/number.hpp"
#include "ratcover/upoly.hpp"

#include <string>

namespace ratcover {

class IntervalError : public Error {
 public:
  using Error::Error;
};

struct Interval {
  Rational lo, hi;

  Interval() = default;
  Interval(const Rational& v) : lo(v), hi(v) {}  // NOLINT: points convert implicitly
  Interval(const Rational& a, const Rational& b);

  /// Grid used for outward rounding of products and quotients: 2^-bits.
  static unsigned long& rounding_bits();

  Rational mag() const;
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }
  bool is_point() const { return lo == hi; }

  Interval rounded() const;
  std::string to_string() const;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
/// Throws IntervalError when the divisor contains zero.
Interval operator/(const Interval& a, const Interval& b);
Interval ipow(const Interval& a, unsigned e);
Interval hull(const Interval& a, const Interval& b);

/// Enclosure of p over x via the Taylor expansion at the midpoint of x,
/// which is exact for affine p and tight for narrow x.
Interval eval(const UPoly& p, const Interval& x);

/// Enclosure of num/den over x; throws IntervalError if den may vanish.
Interval eval(const RatFunc1& f, const Interval& x);

}  // namespace ratcover
