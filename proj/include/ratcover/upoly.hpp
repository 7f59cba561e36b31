// Dense univariate polynomials over Q, Sturm sequences, exact real-root
// isolation, and univariate rational functions.
#pragma once

#include "ratcover/number.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ratcover {

class UPoly {
 public:
  UPoly() = default;
  /// Coefficients in ascending degree order; trailing zeros are trimmed.
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly constant(const Rational& c);
  static UPoly x();
  static UPoly from_integers(const std::vector<long>& coeffs);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& t) const;
  int sign_at(const Rational& t) const;

  UPoly derivative() const;
  /// this(inner(t))
  UPoly compose(const UPoly& inner) const;
  UPoly monic() const;
  /// Scales to coprime integer coefficients with positive leading coefficient.
  UPoly primitive() const;
  std::vector<Integer> integer_coeffs() const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rational& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder; throws on division by zero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero iff both are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
UPoly squarefree_part(const UPoly& p);
UPoly pow(const UPoly& p, unsigned e);

std::vector<UPoly> sturm_sequence(const UPoly& p);
/// Distinct real roots in (a, b] of the squarefree polynomial the sequence
/// was built from.
unsigned sturm_count(const std::vector<UPoly>& seq, const Rational& a, const Rational& b);
/// Distinct real roots on the whole line.
unsigned sturm_count_all(const std::vector<UPoly>& seq);

/// Either an exact root (lo == hi) or an open interval (lo, hi) holding
/// exactly one root with p(lo), p(hi) both nonzero.
struct RootInterval {
  Rational lo, hi;
  bool exact() const { return lo == hi; }
};

/// One interval per distinct real root, sorted; neighbours may share an
/// endpoint, which is then not a root. Throws on the zero polynomial.
std::vector<RootInterval> isolate_real_roots(const UPoly& p);
/// Roots lying strictly inside (a, b).
std::vector<RootInterval> isolate_real_roots_in(const UPoly& p, const Rational& a, const Rational& b);
/// Real roots of p strictly inside (a, b), located by Descartes' rule of
/// signs with bisection down to `width`. Each interval is an exact rational
/// root (lo == hi), holds exactly one simple root (`isolated`), or is a
/// cluster that may hold several roots or none. p need not be squarefree;
/// multiple roots end up in clusters.
struct RootCluster {
  Rational lo, hi;
  bool isolated = false;
};
std::vector<RootCluster> real_root_clusters(const UPoly& p, const Rational& a, const Rational& b, const Rational& width);

/// Shrinks an isolating interval of a root of `p` until hi - lo <= width.
RootInterval refine_root(const UPoly& p, RootInterval iv, const Rational& width);

/// Bound M such that every real root lies in (-M, M).
Rational cauchy_bound(const UPoly& p);

/// Univariate rational function num/den on a rational domain (lo, hi).
struct RatFunc1 {
  UPoly num;
  UPoly den = UPoly::constant(1);
  Rational lo = 0, hi = 1;

  Rational operator()(const Rational& t) const;
  /// Throws if den has a root in the closed domain [lo, hi].
  void check_pole_free() const;
  /// j-th derivative as N_j / den^(j+1); index j of the result is N_j.
  std::vector<UPoly> derivative_numerators(unsigned upto) const;
  /// this(inner(t)), with inner's domain kept.
  RatFunc1 compose(const RatFunc1& inner) const;
  RatFunc1 derivative() const;
};

/// Parses "c0,c1,...,ck" (ascending) into a polynomial.
UPoly parse_upoly(std::string_view text);
std::string format_upoly(const UPoly& p);

}  // namespace ratcover
