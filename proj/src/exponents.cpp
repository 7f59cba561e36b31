#include "ratcover/exponents.hpp"

#include "ratcover/bound_constant.hpp"

#include <numeric>

namespace ratcover {

unsigned MultiIndex::order() const { return std::accumulate(entries.begin(), entries.end(), 0u); }

namespace {

// Appends every vector of length `len` summing to `total`, lexicographically
// decreasing.
void fill_degree(unsigned len, unsigned total, std::vector<unsigned>& prefix, std::vector<MultiIndex>& out) {
  if (len == 1) {
    prefix.push_back(total);
    out.push_back(MultiIndex{prefix});
    prefix.pop_back();
    return;
  }
  for (unsigned first = total + 1; first-- > 0;) {
    prefix.push_back(first);
    fill_degree(len - 1, total - first, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> monomials(unsigned n, unsigned e) {
  std::vector<MultiIndex> out;
  if (n == 0) {
    out.push_back(MultiIndex{});
    return out;
  }
  std::vector<unsigned> prefix;
  for (unsigned d = 0; d <= e; ++d) fill_degree(n, d, prefix, out);
  return out;
}

Integer dim_D(long n, long e) { return binomial(e + n, n); }

Integer dim_E(long n, long e) { return binomial(e + n - 1, n - 1); }

Integer vee_V(long n, long e) {
  Integer v = 0;
  for (long i = 0; i <= e; ++i) v += i * dim_E(n, i);
  return v;
}

unsigned long b_of(unsigned m, unsigned n, unsigned e) {
  if (m == 0 || n == 0 || e == 0) throw Error("b_of requires m, n, e >= 1");
  const Integer target = dim_D(n, e);
  unsigned long lo = 0;  // D(m,0) = 1 <= target always
  unsigned long hi = 1;
  while (dim_D(m, static_cast<long>(hi)) <= target) {
    lo = hi;
    hi *= 2;
  }
  // invariant: D(m,lo) <= target < D(m,hi)
  while (hi - lo > 1) {
    unsigned long mid = lo + (hi - lo) / 2;
    if (dim_D(m, static_cast<long>(mid)) <= target)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

ExponentProfile profile(unsigned m, unsigned n, unsigned e, JMode mode) {
  if (m == 0 || e == 0) throw Error("profile requires m >= 1 and e >= 1");
  if (m >= n) throw Error("profile requires m < n (epsilon only tends to 0 when m < n)");
  ExponentProfile p;
  p.m = m;
  p.n = n;
  p.e = e;
  p.D = to_ulong(dim_D(n, e), "D(n,e)");
  p.b = b_of(m, n, e);
  p.k = p.b + 1;
  const long b = static_cast<long>(p.b);
  p.B = vee_V(m, b) + Integer(p.b + 1) * (Integer(p.D) - dim_D(m, b));
  p.epsilon = make_rational(Integer(m) * n * e * Integer(p.D), p.B);
  BoundConstant kc = bound_constant_K(m, n, e, mode);
  p.K = kc.K;
  p.J_count = kc.J_count;
  p.J_exact = kc.J_exact;
  p.c = kc.c;
  return p;
}

}  // namespace ratcover
