// Sparse multivariate polynomials over Q and quotients of them, used for
// chart coordinates, hypersurface evaluation and membership predicates.
#pragma once

#include "ratcover/exponents.hpp"
#include "ratcover/interval.hpp"
#include "ratcover/number.hpp"
#include "ratcover/upoly.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace ratcover {

class MPoly {
 public:
  using Exponents = std::vector<unsigned>;

  explicit MPoly(unsigned nvars = 0) : nvars_(nvars) {}
  static MPoly constant(unsigned nvars, const Rational& c);
  static MPoly var(unsigned nvars, unsigned i);
  /// Embeds a univariate polynomial as a polynomial in variable `i`.
  static MPoly from_upoly(unsigned nvars, unsigned i, const UPoly& p);

  unsigned nvars() const { return nvars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  void add_term(const Exponents& exps, const Rational& c);
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const;

  Rational operator()(std::span<const Rational> x) const;
  Interval eval(std::span<const Interval> box) const;

  MPoly partial(unsigned var) const;
  MPoly partial(const MultiIndex& alpha) const;
  /// Substitutes x_i -> offset_i + scale_i * x_i.
  MPoly affine_substitute(std::span<const Rational> offset, std::span<const Rational> scale) const;
  /// Requires nvars() == 1.
  UPoly to_upoly() const;

  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const Rational& s, const MPoly& a);
  friend bool operator==(const MPoly& a, const MPoly& b) = default;

  std::string to_string() const;

 private:
  unsigned nvars_;
  std::map<Exponents, Rational> terms_;
};

MPoly pow(const MPoly& p, unsigned e);

/// num / den^power. Derivatives keep the same base denominator and raise
/// the power by one per differentiation, so degrees grow linearly.
struct RatFuncM {
  MPoly num;
  MPoly den;
  unsigned power = 1;

  static RatFuncM polynomial(const MPoly& p);
  static RatFuncM quotient(const MPoly& n, const MPoly& d);

  unsigned nvars() const { return num.nvars(); }
  Rational operator()(std::span<const Rational> x) const;
  /// Throws IntervalError if the denominator enclosure contains zero.
  Interval eval(std::span<const Interval> box) const;
  RatFuncM partial(unsigned var) const;
  RatFuncM partial(const MultiIndex& alpha) const;
  RatFuncM affine_substitute(std::span<const Rational> offset, std::span<const Rational> scale) const;
};

}  // namespace ratcover
