#include "ratcover/upoly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ratcover {

UPoly::UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const Rational& c) { return UPoly(std::vector<Rational>{c}); }

UPoly UPoly::x() { return UPoly(std::vector<Rational>{Rational(0), Rational(1)}); }

UPoly UPoly::from_integers(const std::vector<long>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return UPoly(std::move(c));
}

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UPoly::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

int UPoly::sign_at(const Rational& t) const { return sgn((*this)(t)); }

UPoly UPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return UPoly(std::move(d));
}

UPoly UPoly::compose(const UPoly& inner) const {
  UPoly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + UPoly::constant(*it);
  return acc;
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  Rational inv = 1 / leading();
  return inv * *this;
}

std::vector<Integer> UPoly::integer_coeffs() const {
  Integer den = 1;
  for (const auto& c : coeffs_) den = lcm(den, c.get_den());
  std::vector<Integer> out;
  out.reserve(coeffs_.size());
  Integer g = 0;
  for (const auto& c : coeffs_) {
    Rational s = c * den;
    out.push_back(s.get_num());
    g = gcd(g, s.get_num());
  }
  if (g != 0) {
    if (!out.empty() && out.back() < 0) g = -g;
    for (auto& v : out) v /= g;
  }
  return out;
}

UPoly UPoly::primitive() const {
  std::vector<Rational> c;
  for (auto& z : integer_coeffs()) c.emplace_back(z);
  return UPoly(std::move(c));
}

UPoly UPoly::operator-() const {
  std::vector<Rational> c = coeffs_;
  for (auto& v : c) v = -v;
  return UPoly(std::move(c));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UPoly(std::move(c));
}

UPoly operator*(const Rational& s, const UPoly& a) {
  std::vector<Rational> c = a.coeffs_;
  for (auto& v : c) v *= s;
  return UPoly(std::move(c));
}

std::string UPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Rational a = abs(c);
    if (a != 1 || i == 0) os << a.get_str();
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational lead_inv = 1 / b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Rational f = rem[static_cast<std::size_t>(i)] * lead_inv;
    q[static_cast<std::size_t>(i - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b.coeff(static_cast<std::size_t>(j));
  }
  return {UPoly(std::move(q)), UPoly(std::move(rem))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second.primitive();  // keeps coefficient growth in check
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p;
  UPoly g = gcd(p, p.derivative());
  return divmod(p, g).first;
}

UPoly pow(const UPoly& p, unsigned e) {
  UPoly r = UPoly::constant(1);
  for (unsigned i = 0; i < e; ++i) r = r * p;
  return r;
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  UPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    UPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    // primitive() may flip the sign; a Sturm chain only tolerates positive scaling.
    UPoly nr = -r;
    Rational lead = nr.leading();
    UPoly prim = nr.primitive();
    if ((lead < 0) != (prim.leading() < 0)) prim = -prim;
    seq.push_back(prim);
  }
  return seq;
}

namespace {

unsigned variations(const std::vector<int>& signs) {
  unsigned v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

unsigned variations_at(const std::vector<UPoly>& seq, const Rational& x) {
  std::vector<int> s;
  s.reserve(seq.size());
  for (const auto& p : seq) s.push_back(p.sign_at(x));
  return variations(s);
}

// Sign of p at +infinity (dir > 0) or -infinity.
unsigned variations_at_infinity(const std::vector<UPoly>& seq, int dir) {
  std::vector<int> s;
  for (const auto& p : seq) {
    int sg = sgn(p.leading());
    if (dir < 0 && p.degree() % 2 == 1) sg = -sg;
    s.push_back(sg);
  }
  return variations(s);
}

}  // namespace

unsigned sturm_count(const std::vector<UPoly>& seq, const Rational& a, const Rational& b) {
  if (seq.empty() || !(a < b)) return 0;
  unsigned va = variations_at(seq, a), vb = variations_at(seq, b);
  return va >= vb ? va - vb : 0;
}

unsigned sturm_count_all(const std::vector<UPoly>& seq) {
  if (seq.empty()) return 0;
  return variations_at_infinity(seq, -1) - variations_at_infinity(seq, 1);
}

Rational cauchy_bound(const UPoly& p) {
  if (p.degree() < 1) return 1;
  Rational m = 0;
  const Rational lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(static_cast<std::size_t>(i))) / lead));
  return m + 1;
}

namespace {

void isolate_rec(const UPoly& p, const std::vector<UPoly>& seq, const Rational& lo, const Rational& hi, unsigned count,
                 std::vector<RootInterval>& out) {
  if (count == 0) return;
  if (count == 1) {
    if (p(hi) == 0)
      out.push_back({hi, hi});
    else
      out.push_back({lo, hi});
    return;
  }
  Rational mid = (lo + hi) / 2;
  unsigned left = sturm_count(seq, lo, mid);
  isolate_rec(p, seq, lo, mid, left, out);
  isolate_rec(p, seq, mid, hi, count - left, out);
}

// Shrinks an open isolating interval until neither endpoint is a root. The
// root of interest is the only one strictly inside (lo, hi).
RootInterval clear_endpoints(const UPoly& p, const std::vector<UPoly>& seq, RootInterval iv) {
  while (!iv.exact() && (p(iv.lo) == 0 || p(iv.hi) == 0)) {
    Rational mid = (iv.lo + iv.hi) / 2;
    if (p(mid) == 0) return {mid, mid};
    if (sturm_count(seq, iv.lo, mid) == 1)
      iv.hi = mid;
    else
      iv.lo = mid;
  }
  return iv;
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const UPoly& p) {
  if (p.is_zero()) throw Error("isolate_real_roots: zero polynomial");
  UPoly sq = squarefree_part(p);
  if (sq.degree() < 1) return {};
  auto seq = sturm_sequence(sq);
  Rational m = cauchy_bound(sq);
  std::vector<RootInterval> out;
  isolate_rec(sq, seq, -m, m, sturm_count(seq, -m, m), out);
  for (auto& iv : out) iv = clear_endpoints(sq, seq, iv);
  return out;
}

std::vector<RootInterval> isolate_real_roots_in(const UPoly& p, const Rational& a, const Rational& b) {
  std::vector<RootInterval> out;
  UPoly sq = squarefree_part(p);
  if (p.is_zero()) throw Error("isolate_real_roots_in: zero polynomial");
  if (sq.degree() < 1 || !(a < b)) return out;
  for (auto iv : isolate_real_roots(sq)) {
    // Narrow until the interval sits on one side of a and of b.
    auto seq = sturm_sequence(sq);
    while (!iv.exact() && ((iv.lo < a && a < iv.hi) || (iv.lo < b && b < iv.hi))) {
      Rational mid = (iv.lo + iv.hi) / 2;
      if (sq(mid) == 0) {
        iv = {mid, mid};
        break;
      }
      if (sturm_count(seq, iv.lo, mid) == 1)
        iv.hi = mid;
      else
        iv.lo = mid;
    }
    if (iv.exact()) {
      if (a < iv.lo && iv.lo < b) out.push_back(iv);
      continue;
    }
    if (a <= iv.lo && iv.hi <= b) out.push_back(iv);
  }
  return out;
}

namespace {

using IPoly = std::vector<Integer>;  // ascending coefficients

void taylor_shift_one(IPoly& c) {
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j-- > i;) c[j] += c[j + 1];
}

void divide_content(IPoly& c) {
  Integer g = 0;
  for (const auto& v : c) g = gcd(g, v);
  if (g > 1)
    for (auto& v : c) v /= g;
}

// Sign variations of (x+1)^n c(1/(x+1)), an upper bound on the roots of c in
// (0, 1) with the same parity.
unsigned descartes_01(const IPoly& c) {
  IPoly r(c.rbegin(), c.rend());
  taylor_shift_one(r);
  unsigned v = 0;
  int last = 0;
  for (const auto& x : r) {
    const int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

std::vector<RootCluster> real_root_clusters(const UPoly& p, const Rational& a, const Rational& b, const Rational& width) {
  if (p.is_zero()) throw Error("real_root_clusters: zero polynomial");
  std::vector<RootCluster> out;
  if (!(a < b) || p.degree() < 1) return out;
  const Rational span = b - a;
  // q(x) = p(a + span x), roots in (0, 1).
  IPoly q = p.compose(UPoly(std::vector<Rational>{a, span})).integer_coeffs();
  while (q.size() > 1 && q.front() == 0) q.erase(q.begin());  // root at a itself
  struct Node {
    IPoly c;    // 2^{kn} q((x + j) / 2^k)
    unsigned long k;
    Integer j;  // the node covers (j / 2^k, (j + 1) / 2^k)
  };
  std::vector<Node> work{{q, 0, 0}};
  auto at = [&](const Integer& j, unsigned long k) -> Rational { return a + span * dyadic(j, k); };
  while (!work.empty()) {
    Node nd = std::move(work.back());
    work.pop_back();
    if (nd.c.size() <= 1) continue;
    const unsigned v = descartes_01(nd.c);
    if (v == 0) continue;
    const Rational lo = at(nd.j, nd.k), hi = at(nd.j + 1, nd.k);
    if (hi - lo <= width) {
      out.push_back({lo, hi, v == 1});
      continue;
    }
    // Left half: 2^n c(x / 2); right half: the left one shifted by 1.
    const std::size_t n = nd.c.size() - 1;
    IPoly left(nd.c.size());
    for (std::size_t i = 0; i <= n; ++i) left[i] = nd.c[i] << (n - i);
    IPoly right = left;
    taylor_shift_one(right);
    if (right.front() == 0) {
      out.push_back({at(2 * nd.j + 1, nd.k + 1), at(2 * nd.j + 1, nd.k + 1), false});
      while (right.size() > 1 && right.front() == 0) right.erase(right.begin());
    }
    divide_content(left);
    divide_content(right);
    work.push_back({std::move(right), nd.k + 1, 2 * nd.j + 1});
    work.push_back({std::move(left), nd.k + 1, 2 * nd.j});
  }
  std::sort(out.begin(), out.end(), [](const RootCluster& x, const RootCluster& y) { return x.lo < y.lo; });
  return out;
}

RootInterval refine_root(const UPoly& p, RootInterval iv, const Rational& width) {
  if (iv.exact()) return iv;
  int slo = p.sign_at(iv.lo);
  if (slo == 0 || p.sign_at(iv.hi) == 0) {
    auto seq = sturm_sequence(squarefree_part(p));
    iv = clear_endpoints(squarefree_part(p), seq, iv);
    if (iv.exact()) return iv;
    slo = p.sign_at(iv.lo);
  }
  if (slo == p.sign_at(iv.hi)) {
    // Even multiplicity root: fall back to counting on the squarefree part.
    UPoly sq = squarefree_part(p);
    return refine_root(sq, iv, width);
  }
  while (iv.hi - iv.lo > width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    int s = p.sign_at(mid);
    if (s == 0) return {mid, mid};
    if (s == slo)
      iv.lo = mid;
    else
      iv.hi = mid;
  }
  return iv;
}

Rational RatFunc1::operator()(const Rational& t) const {
  Rational d = den(t);
  if (d == 0) throw Error("rational function evaluated at a pole: " + ratcover::to_string(t));
  return num(t) / d;
}

void RatFunc1::check_pole_free() const {
  if (den.is_zero()) throw Error("rational function with zero denominator");
  if (den.degree() == 0) return;
  if (den(lo) == 0 || den(hi) == 0) throw Error("denominator vanishes at a domain endpoint");
  auto seq = sturm_sequence(squarefree_part(den));
  if (sturm_count(seq, lo, hi) != 0)
    throw Error("denominator has a root inside [" + ratcover::to_string(lo) + ", " + ratcover::to_string(hi) + "]");
}

std::vector<UPoly> RatFunc1::derivative_numerators(unsigned upto) const {
  std::vector<UPoly> out{num};
  UPoly dd = den.derivative();
  for (unsigned j = 0; j < upto; ++j) {
    const UPoly& nj = out.back();
    out.push_back(nj.derivative() * den - Rational(j + 1) * (nj * dd));
  }
  return out;
}

RatFunc1 RatFunc1::derivative() const {
  RatFunc1 r;
  r.num = num.derivative() * den - num * den.derivative();
  r.den = den * den;
  r.lo = lo;
  r.hi = hi;
  UPoly g = gcd(r.num, r.den);
  if (!r.num.is_zero() && g.degree() > 0) {
    r.num = divmod(r.num, g).first;
    r.den = divmod(r.den, g).first;
  }
  return r;
}

RatFunc1 RatFunc1::compose(const RatFunc1& inner) const {
  const int M = std::max(std::max(num.degree(), den.degree()), 0);
  std::vector<UPoly> apow{UPoly::constant(1)}, bpow{UPoly::constant(1)};
  for (int i = 1; i <= M; ++i) {
    apow.push_back(apow.back() * inner.num);
    bpow.push_back(bpow.back() * inner.den);
  }
  auto homog = [&](const UPoly& p) {
    UPoly acc;
    for (int i = 0; i <= p.degree(); ++i) {
      const Rational& c = p.coeffs()[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      acc = acc + c * (apow[static_cast<std::size_t>(i)] * bpow[static_cast<std::size_t>(M - i)]);
    }
    return acc;
  };
  RatFunc1 r;
  r.num = homog(num);
  r.den = homog(den);
  r.lo = inner.lo;
  r.hi = inner.hi;
  if (!r.num.is_zero()) {
    UPoly g = gcd(r.num, r.den);
    if (g.degree() > 0) {
      r.num = divmod(r.num, g).first;
      r.den = divmod(r.den, g).first;
    }
  }
  return r;
}

UPoly parse_upoly(std::string_view text) {
  std::vector<Rational> c;
  for (const auto& f : split(text, ',')) c.push_back(parse_rational(f));
  return UPoly(std::move(c));
}

std::string format_upoly(const UPoly& p) {
  if (p.is_zero()) return "0/1";
  std::string s;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i) s += ",";
    s += ratcover::to_string(p.coeffs()[i]);
  }
  return s;
}

}  // namespace ratcover
