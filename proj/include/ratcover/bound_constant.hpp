#pragma once

#include "ratcover/exponents.hpp"

namespace ratcover {

struct BoundConstant {
  Integer K;        ///< #J * D! * c^D
  Integer J_count;  ///< exact #J, or (b+2)^D in bound mode
  bool J_exact = false;
  Integer c;        ///< D(m,k)^e
};

/// Constant K(m,n,e) with |det(f(a_i)^alpha)| <= K r^B for clustered points
/// on a strong (b+1)-parametrization.
BoundConstant bound_constant_K(unsigned m, unsigned n, unsigned e, JMode mode = JMode::Auto);

/// Number of tuples j in {0..b+1}^D with at most E(m,j) entries equal to j
/// for every j <= b (no cap on the value b+1).
Integer count_J_exact(unsigned m, unsigned long D, unsigned long b);

}  // namespace ratcover
