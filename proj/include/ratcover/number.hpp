// Exact scalars shared by every module: arbitrary-precision integers and
// canonical rationals (both backed by GMP), plus the small set of
// number-theoretic helpers the rest of the library leans on.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ratcover {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds n/d in lowest terms with a positive denominator. Throws on d == 0.
Rational make_rational(const Integer& n, const Integer& d);

/// Parses "p", "p/q" or "-p/q" (whitespace-trimmed). Throws Error on junk.
Rational parse_rational(std::string_view text);

/// Always "p/q", including "/1" for integers, so serialized forms are uniform.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Binomial coefficient with the conventions binom(-1,-1) = 1 and
/// binom(k,-1) = 0; otherwise 0 when k < 0 or n < k (n >= 0).
Integer binomial(long n, long k);

Integer factorial(unsigned long n);
Integer ipow(const Integer& base, unsigned long exp);
Rational rpow(const Rational& base, unsigned long exp);

/// floor(log2(z)) + 1 for z > 0, i.e. the bit length.
unsigned long bit_length(const Integer& z);

/// If a >= 0 is a perfect q-th power, writes the root and returns true.
bool exact_root(const Integer& a, unsigned long q, Integer& root);

/// Smallest integer N >= 0 with N^p >= x (x >= 0).
Integer ceil_root(const Integer& x, unsigned long p);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

/// Converts to unsigned long, throwing if it does not fit.
unsigned long to_ulong(const Integer& z, const char* what);

double to_double(const Rational& q);

/// Dyadic rational m / 2^p.
Rational dyadic(const Integer& m, unsigned long p);

/// Largest dyadic k/2^p <= q and smallest >= q.
Rational floor_dyadic(const Rational& q, unsigned long p);
Rational ceil_dyadic(const Rational& q, unsigned long p);

/// Dyadic in [lo, hi] with the smallest power-of-two denominator. A
/// degenerate interval gives back its point, dyadic or not.
Rational shortest_dyadic(const Rational& lo, const Rational& hi);

/// Splits "a,b,c" on `sep`, trimming each field; empty input gives {}.
std::vector<std::string> split(std::string_view text, char sep);

}  // namespace ratcover
