#include "ratcover/mpoly.hpp"

#include <numeric>
#include <sstream>

namespace ratcover {

MPoly MPoly::constant(unsigned nvars, const Rational& c) {
  MPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

MPoly MPoly::var(unsigned nvars, unsigned i) {
  MPoly p(nvars);
  Exponents e(nvars, 0);
  e.at(i) = 1;
  p.add_term(e, 1);
  return p;
}

MPoly MPoly::from_upoly(unsigned nvars, unsigned i, const UPoly& u) {
  MPoly p(nvars);
  for (std::size_t d = 0; d < u.coeffs().size(); ++d) {
    Exponents e(nvars, 0);
    e.at(i) = static_cast<unsigned>(d);
    p.add_term(e, u.coeffs()[d]);
  }
  return p;
}

void MPoly::add_term(const Exponents& exps, const Rational& c) {
  if (exps.size() != nvars_) throw Error("monomial arity mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

unsigned MPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
  return d;
}

Rational MPoly::operator()(std::span<const Rational> x) const {
  if (x.size() != nvars_) throw Error("MPoly evaluated with wrong arity");
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (unsigned i = 0; i < nvars_; ++i)
      if (e[i]) t *= rpow(x[i], e[i]);
    acc += t;
  }
  return acc;
}

Interval MPoly::eval(std::span<const Interval> box) const {
  if (box.size() != nvars_) throw Error("MPoly evaluated with wrong arity");
  if (nvars_ == 1) return ratcover::eval(to_upoly(), box[0]);
  Interval acc(Rational(0));
  for (const auto& [e, c] : terms_) {
    Interval t(c);
    for (unsigned i = 0; i < nvars_; ++i)
      if (e[i]) t = t * ipow(box[i], e[i]);
    acc = acc + t;
  }
  return acc;
}

MPoly MPoly::partial(unsigned var) const {
  MPoly p(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    p.add_term(d, c * e[var]);
  }
  return p;
}

MPoly MPoly::partial(const MultiIndex& alpha) const {
  MPoly p = *this;
  for (unsigned v = 0; v < alpha.entries.size(); ++v)
    for (unsigned r = 0; r < alpha.entries[v]; ++r) p = p.partial(v);
  return p;
}

MPoly MPoly::affine_substitute(std::span<const Rational> offset, std::span<const Rational> scale) const {
  std::vector<MPoly> lin;
  for (unsigned i = 0; i < nvars_; ++i) lin.push_back(constant(nvars_, offset[i]) + scale[i] * var(nvars_, i));
  MPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    MPoly t = constant(nvars_, c);
    for (unsigned i = 0; i < nvars_; ++i)
      if (e[i]) t = t * pow(lin[i], e[i]);
    out = out + t;
  }
  return out;
}

UPoly MPoly::to_upoly() const {
  if (nvars_ != 1) throw Error("to_upoly requires a univariate polynomial");
  std::vector<Rational> c(total_degree() + 1);
  for (const auto& [e, v] : terms_) c[e[0]] = v;
  return UPoly(std::move(c));
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  if (a.nvars_ != b.nvars_) throw Error("MPoly arity mismatch");
  MPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + Rational(-1) * b; }

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.nvars_ != b.nvars_) throw Error("MPoly arity mismatch");
  MPoly r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      MPoly::Exponents e(a.nvars_);
      for (unsigned i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MPoly operator*(const Rational& s, const MPoly& a) {
  MPoly r(a.nvars_);
  for (const auto& [e, c] : a.terms_) r.add_term(e, s * c);
  return r;
}

MPoly pow(const MPoly& p, unsigned e) {
  MPoly r = MPoly::constant(p.nvars(), 1);
  for (unsigned i = 0; i < e; ++i) r = r * p;
  return r;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    Rational a = abs(c);
    bool constant_term = std::accumulate(e.begin(), e.end(), 0u) == 0;
    bool wrote = false;
    if (a != 1 || constant_term) {
      os << a.get_str();
      wrote = true;
    }
    for (unsigned i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      os << (wrote ? "*" : "") << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
    first = false;
  }
  return os.str();
}

RatFuncM RatFuncM::polynomial(const MPoly& p) { return RatFuncM{p, MPoly::constant(p.nvars(), 1), 0}; }

RatFuncM RatFuncM::quotient(const MPoly& n, const MPoly& d) {
  if (d.is_zero()) throw Error("rational function with zero denominator");
  return RatFuncM{n, d, 1};
}

Rational RatFuncM::operator()(std::span<const Rational> x) const {
  if (power == 0) return num(x);
  Rational d = den(x);
  if (d == 0) throw Error("rational function evaluated at a pole");
  return num(x) / rpow(d, power);
}

Interval RatFuncM::eval(std::span<const Interval> box) const {
  if (power == 0 || num.is_zero()) return num.eval(box);
  return num.eval(box) / ipow(den.eval(box), power);
}

RatFuncM RatFuncM::partial(unsigned var) const {
  if (power == 0) return RatFuncM{num.partial(var), den, 0};
  RatFuncM r;
  r.num = num.partial(var) * den - Rational(power) * (num * den.partial(var));
  r.den = den;
  r.power = power + 1;
  return r;
}

RatFuncM RatFuncM::partial(const MultiIndex& alpha) const {
  RatFuncM r = *this;
  for (unsigned v = 0; v < alpha.entries.size(); ++v)
    for (unsigned i = 0; i < alpha.entries[v]; ++i) r = r.partial(v);
  return r;
}

RatFuncM RatFuncM::affine_substitute(std::span<const Rational> offset, std::span<const Rational> scale) const {
  return RatFuncM{num.affine_substitute(offset, scale), den.affine_substitute(offset, scale), power};
}

}  // namespace ratcover
