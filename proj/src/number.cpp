#include "ratcover/number.hpp"

#include <cctype>

namespace ratcover {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s) {
  s = trim(s);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) throw Error("malformed integer: '" + std::string(s) + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw Error("malformed integer: '" + std::string(s) + "'");
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return Integer(digits, 10);
}

}  // namespace

Rational make_rational(const Integer& n, const Integer& d) {
  if (d == 0) throw Error("zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer binomial(long n, long k) {
  if (k < 0) return (n == -1 && k == -1) ? Integer(1) : Integer(0);
  if (n < 0) throw Error("binomial: negative upper argument outside the supported conventions");
  if (n < k) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational rpow(const Rational& base, unsigned long exp) {
  Rational r(ipow(base.get_num(), exp), ipow(base.get_den(), exp));
  return r;  // already canonical: coprime powers of coprime parts
}

unsigned long bit_length(const Integer& z) {
  if (z <= 0) throw Error("bit_length of non-positive integer");
  return mpz_sizeinbase(z.get_mpz_t(), 2);
}

bool exact_root(const Integer& a, unsigned long q, Integer& root) {
  if (a < 0 || q == 0) return false;
  return mpz_root(root.get_mpz_t(), a.get_mpz_t(), q) != 0;
}

Integer ceil_root(const Integer& x, unsigned long p) {
  if (x <= 0) return 0;
  Integer r;
  int exact = mpz_root(r.get_mpz_t(), x.get_mpz_t(), p);
  if (!exact) r += 1;
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

unsigned long to_ulong(const Integer& z, const char* what) {
  if (z < 0 || !z.fits_ulong_p()) throw Error(std::string(what) + " does not fit in a machine word");
  return z.get_ui();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational dyadic(const Integer& m, unsigned long p) {
  Rational r(m, ipow(Integer(2), p));
  r.canonicalize();
  return r;
}

Rational floor_dyadic(const Rational& q, unsigned long p) {
  Integer scaled = q.get_num() << p;
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  return dyadic(f, p);
}

Rational ceil_dyadic(const Rational& q, unsigned long p) {
  Integer scaled = q.get_num() << p;
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  return dyadic(c, p);
}

Rational shortest_dyadic(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw Error("shortest_dyadic: empty interval");
  if (lo == hi) return lo;
  for (unsigned long p = 0;; ++p) {
    const Rational c = ceil_dyadic(lo, p);
    if (c <= hi) return c;
  }
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  std::size_t pos = 0;
  while (true) {
    auto next = text.find(sep, pos);
    out.emplace_back(trim(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace ratcover
