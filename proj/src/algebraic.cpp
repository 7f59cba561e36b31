#include "ratcover/algebraic.hpp"

#include <algorithm>
#include <sstream>

namespace ratcover {

namespace {

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

bool has_rational_root(const UPoly& p) {
  const UPoly prim = p.primitive();
  const Integer lead = prim.integer_coeffs().back();
  const auto qs = divisors(lead);
  // Distinct rationals with denominators dividing lead are >= 1/lead^2 apart.
  const Rational width = Rational(1, 2) / (Rational(lead) * lead);
  for (auto iv : isolate_real_roots(prim)) {
    if (iv.exact()) return true;
    iv = refine_root(prim, iv, width);
    if (iv.exact()) return true;
    for (const auto& q : qs) {
      Integer lo_num = iv.lo.get_num() * q;
      Integer start;
      mpz_fdiv_q(start.get_mpz_t(), lo_num.get_mpz_t(), iv.lo.get_den().get_mpz_t());
      for (Integer k = start; k <= start + 2; ++k)
        if (prim(make_rational(k, q)) == 0) return true;
    }
  }
  return false;
}

}  // namespace

AlgNumber::AlgNumber(const UPoly& minpoly, const Rational& lo, const Rational& hi)
    : minpoly_(minpoly.primitive()), lo_(lo), hi_(hi) {
  if (minpoly_.degree() < 1) throw Error("algebraic number needs a polynomial of degree >= 1");
  if (!(lo_ < hi_)) throw Error("isolating interval must have lo < hi");
  if (gcd(minpoly_, minpoly_.derivative()).degree() > 0) throw Error("minimal polynomial is not squarefree");
  const int slo = minpoly_.sign_at(lo_), shi = minpoly_.sign_at(hi_);
  if (slo == 0 || shi == 0 || slo == shi) throw Error("isolating interval lacks a sign change");
  if (sturm_count(sturm_sequence(minpoly_), lo_, hi_) != 1)
    throw Error("isolating interval holds more than one root");
  if (minpoly_.degree() >= 2 && minpoly_.degree() <= 3 && has_rational_root(minpoly_))
    throw Error("polynomial has a rational root and is reducible: " + minpoly_.to_string());
}

AlgNumber AlgNumber::rational(const Rational& q) {
  return AlgNumber(UPoly(std::vector<Rational>{-q, Rational(1)}), q - 1, q + 1);
}

AlgNumber AlgNumber::parse(std::string_view text) {
  const auto parts = split(text, ';');
  if (parts.size() != 2 || !parts[0].starts_with("poly:") || !parts[1].starts_with("interval:"))
    throw Error("expected poly:c0,...,ck;interval:lo,hi");
  const UPoly p = parse_upoly(parts[0].substr(5));
  const auto iv = split(parts[1].substr(9), ',');
  if (iv.size() != 2) throw Error("interval needs two endpoints");
  return AlgNumber(p, parse_rational(iv[0]), parse_rational(iv[1]));
}

Rational AlgNumber::as_rational() const {
  if (degree() != 1) throw Error("algebraic number of degree > 1 is not rational");
  return -minpoly_.coeff(0) / minpoly_.coeff(1);
}

void AlgNumber::refine(const Rational& width) {
  auto iv = refine_root(minpoly_, RootInterval{lo_, hi_}, width);
  if (iv.exact()) {
    lo_ = iv.lo - width / 4;
    hi_ = iv.hi + width / 4;
  } else {
    lo_ = iv.lo;
    hi_ = iv.hi;
  }
}

double AlgNumber::approx() const {
  if (degree() == 1) return to_double(as_rational());
  AlgNumber c = *this;
  c.refine(Rational(1, Integer(1) << 60));
  return to_double((c.lo_ + c.hi_) / 2);
}

std::string AlgNumber::to_string() const {
  std::ostringstream os;
  os << "poly:";
  const auto c = minpoly_.integer_coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i].get_str();
  os << ";interval:" << ratcover::to_string(lo_) << ',' << ratcover::to_string(hi_);
  return os.str();
}

bool AlgNumber::same_number(const AlgNumber& o) const {
  if (!(minpoly_ == o.minpoly_)) return false;
  const Rational lo = std::max(lo_, o.lo_), hi = std::min(hi_, o.hi_);
  if (!(lo < hi)) return false;
  return sturm_count(sturm_sequence(minpoly_), lo, hi) == 1;
}

NFElement::NFElement(std::shared_ptr<const AlgNumber> field, UPoly value) : field_(std::move(field)) {
  if (!field_) throw Error("number field element without a field");
  value_ = divmod(value, field_->minpoly()).second;
}

NFElement NFElement::constant(std::shared_ptr<const AlgNumber> field, const Rational& q) {
  return NFElement(std::move(field), UPoly::constant(q));
}

NFElement NFElement::generator(std::shared_ptr<const AlgNumber> field) {
  return NFElement(std::move(field), UPoly::x());
}

void NFElement::check_same_field(const NFElement& o) const {
  if (field_ != o.field_ && !field_->same_number(*o.field_))
    throw Error("elements of different number fields cannot be combined");
}

NFElement operator+(const NFElement& a, const NFElement& b) {
  a.check_same_field(b);
  return NFElement(a.field_, a.value_ + b.value_);
}

NFElement operator-(const NFElement& a, const NFElement& b) {
  a.check_same_field(b);
  return NFElement(a.field_, a.value_ - b.value_);
}

NFElement operator*(const NFElement& a, const NFElement& b) {
  a.check_same_field(b);
  return NFElement(a.field_, a.value_ * b.value_);
}

NFElement operator*(const Rational& s, const NFElement& a) { return NFElement(a.field_, s * a.value_); }

bool operator==(const NFElement& a, const NFElement& b) {
  a.check_same_field(b);
  return a.value_ == b.value_;
}

std::string NFElement::to_string() const {
  if (value_.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < value_.coeffs().size(); ++i) {
    const Rational& c = value_.coeffs()[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    const Rational a = abs(c);
    if (i == 0) os << a.get_str();
    else {
      if (a != 1) os << a.get_str() << '*';
      os << 'a';
      if (i > 1) os << '^' << i;
    }
    first = false;
  }
  return os.str();
}

double NFElement::approx() const {
  const double a = field_->approx();
  double acc = 0;
  for (auto it = value_.coeffs().rbegin(); it != value_.coeffs().rend(); ++it) acc = acc * a + to_double(*it);
  return acc;
}

}  // namespace ratcover
