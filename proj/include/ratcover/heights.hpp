// Multiplicative heights of rationals and rational points, the height
// H_lambda relative to a real vector lambda, and the polynomial height
// H^poly_d of a real algebraic number.
#pragma once

#include "ratcover/algebraic.hpp"
#include "ratcover/number.hpp"

#include <optional>
#include <vector>

namespace ratcover {

/// max(|p|, q) for p/q in lowest terms.
Integer height_rat(const Rational& q);
/// Max of coordinate heights; 0 for the empty point.
Integer height_point(const std::vector<Rational>& a);

struct LambdaSpec {
  enum class Mode { Independent, Dependent };
  unsigned d = 1;
  Mode mode = Mode::Independent;
  /// Basis of { r in Q^d : r . lambda = 0 }. Supplied by the caller and
  /// trusted: only linear independence is checked, plus r . lambda = 0 when
  /// rational `values` are given.
  std::vector<std::vector<Rational>> relations;
  std::optional<std::vector<Rational>> values;

  void validate() const;
};

struct LambdaHeight {
  Integer height;
  std::vector<Rational> witness;  ///< q' with q' . lambda = q . lambda and H(q') = height
};

LambdaHeight height_lambda(const std::vector<Rational>& q, const LambdaSpec& spec);

/// Minimum of H(xi) over xi in Q^d with alpha^d + xi_1 alpha^{d-1} + ... +
/// xi_d = 0; nullopt when deg(alpha) > d.
struct PolyHeight {
  Integer height;
  std::vector<Rational> xi;
};
std::optional<PolyHeight> height_poly_d(const AlgNumber& alpha, unsigned d);
std::optional<PolyHeight> height_poly_d(const Rational& alpha, unsigned d);

/// Minimum H(x) over the affine space base + span(directions), searched by
/// increasing height over the coordinates that parametrize the space.
/// Exposed for testing.
LambdaHeight min_height_affine(const std::vector<Rational>& base,
                               const std::vector<std::vector<Rational>>& directions);

}  // namespace ratcover
