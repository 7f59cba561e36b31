// Combinatorial exponent calculus of the determinant method: monomial
// counts, the intermediate degree b, the vanishing budget B and the
// exponent epsilon = m*n*e*D / B.
#pragma once

#include "ratcover/number.hpp"

#include <cstdint>
#include <vector>

namespace ratcover {

struct MultiIndex {
  std::vector<unsigned> entries;

  unsigned order() const;
  bool operator==(const MultiIndex&) const = default;
};

/// All alpha in N^n with |alpha| <= e in graded-lexicographic order:
/// increasing total degree, then lexicographically *decreasing* exponent
/// vectors, so x1 > x2 > ... > xn. For n = 2, e = 2 this is
/// 1, x, y, x^2, xy, y^2. Every matrix column order and every serialized
/// hypersurface uses exactly this order.
std::vector<MultiIndex> monomials(unsigned n, unsigned e);

Integer dim_D(long n, long e);
Integer dim_E(long n, long e);
/// V(n,e) = sum_{i<=e} i*E(n,i), computed from the sum itself.
Integer vee_V(long n, long e);

/// The unique b with D(m,b) <= D(n,e) < D(m,b+1), by doubling then bisection.
unsigned long b_of(unsigned m, unsigned n, unsigned e);

/// How #J in the determinant bound constant is obtained.
enum class JMode {
  Auto,   ///< exact when D <= 12, otherwise the (b+2)^D bound
  Exact,  ///< always count J exactly
  Bound,  ///< always use (b+2)^D
};

struct ExponentProfile {
  unsigned m = 0, n = 0, e = 0;
  unsigned long D = 0;
  unsigned long b = 0;
  unsigned long k = 0;
  Integer B;
  Rational epsilon;
  Integer K;
  Integer J_count;
  bool J_exact = false;
  Integer c;  ///< D(m,k)^e, the per-coefficient bound
};

/// Full record for (m, n, e). Requires 1 <= m < n and e >= 1.
ExponentProfile profile(unsigned m, unsigned n, unsigned e, JMode mode = JMode::Auto);

}  // namespace ratcover
