// Real algebraic numbers (minimal polynomial plus isolating interval) and
// exact arithmetic in the field Q(alpha) they generate.
#pragma once

#include "ratcover/number.hpp"
#include "ratcover/upoly.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace ratcover {

class AlgNumber {
 public:
  /// Validates: squarefree, positive leading coefficient after making the
  /// polynomial primitive, exactly one root in (lo, hi] with a sign change.
  /// Irreducibility is checked for degree <= 3 and trusted above that.
  AlgNumber(const UPoly& minpoly, const Rational& lo, const Rational& hi);
  static AlgNumber rational(const Rational& q);
  /// "poly:c0,c1,...,ck;interval:lo,hi" with ascending coefficients.
  static AlgNumber parse(std::string_view text);

  const UPoly& minpoly() const { return minpoly_; }
  int degree() const { return minpoly_.degree(); }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  /// Exact value when the degree is 1.
  Rational as_rational() const;
  /// Shrinks the isolating interval below `width`.
  void refine(const Rational& width);
  double approx() const;
  std::string to_string() const;

  bool same_number(const AlgNumber& o) const;

 private:
  UPoly minpoly_;
  Rational lo_, hi_;
};

/// Element of Q(alpha) as a polynomial in alpha of degree < deg(alpha).
class NFElement {
 public:
  NFElement(std::shared_ptr<const AlgNumber> field, UPoly value);
  static NFElement constant(std::shared_ptr<const AlgNumber> field, const Rational& q);
  static NFElement generator(std::shared_ptr<const AlgNumber> field);

  const AlgNumber& field() const { return *field_; }
  std::shared_ptr<const AlgNumber> field_ptr() const { return field_; }
  const UPoly& value() const { return value_; }
  bool is_rational() const { return value_.degree() <= 0; }

  friend NFElement operator+(const NFElement& a, const NFElement& b);
  friend NFElement operator-(const NFElement& a, const NFElement& b);
  friend NFElement operator*(const NFElement& a, const NFElement& b);
  friend NFElement operator*(const Rational& s, const NFElement& a);
  friend bool operator==(const NFElement& a, const NFElement& b);

  /// "c0 + c1*a + c2*a^2" with "a" for the generator.
  std::string to_string() const;
  double approx() const;

 private:
  void check_same_field(const NFElement& o) const;
  std::shared_ptr<const AlgNumber> field_;
  UPoly value_;
};

}  // namespace ratcover
