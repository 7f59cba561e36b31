#include "ratcover/parametrize.hpp"

#include <algorithm>

namespace ratcover {

std::string to_string(CertMethod m) {
  switch (m) {
    case CertMethod::Exact: return "exact";
    case CertMethod::IntervalVerified: return "interval-verified";
    case CertMethod::Declared: return "declared";
  }
  return "declared";
}

CertMethod parse_cert_method(const std::string& s) {
  if (s == "exact") return CertMethod::Exact;
  if (s == "interval-verified") return CertMethod::IntervalVerified;
  if (s == "declared") return CertMethod::Declared;
  throw Error("unknown certification method: " + s);
}

QPoint StrongParam::operator()(const QPoint& t) const {
  if (t.size() != m) throw Error("parameter arity differs from chart dimension");
  QPoint x;
  for (const auto& c : coords) x.push_back(c(t));
  return x;
}

std::vector<Interval> StrongParam::eval(const std::vector<Interval>& box) const {
  std::vector<Interval> x;
  for (const auto& c : coords) x.push_back(c.eval(box));
  return x;
}

Rational StrongParam::derivative(unsigned coord, const MultiIndex& alpha, const QPoint& t) const {
  return coords.at(coord).partial(alpha)(t);
}

std::optional<QPoint> StrongParam::checked_preimage(const QPoint& x) const {
  if (!preimage) return std::nullopt;
  auto t = preimage(x);
  if (!t || t->size() != m) return std::nullopt;
  for (const auto& ti : *t)
    if (ti < 0 || ti > 1) return std::nullopt;
  if ((*this)(*t) != x) return std::nullopt;
  return t;
}

namespace {

std::string box_string(const std::vector<Interval>& box) {
  std::string s;
  for (std::size_t i = 0; i < box.size(); ++i) s += (i ? " x " : "") + box[i].to_string();
  return s;
}

// Proves |g| <= bound on the box by bisection.
void prove_bound(const RatFuncM& g, std::vector<Interval> box, const Rational& bound, unsigned depth,
                 const CertifyOptions& opts, const std::string& what) {
  std::optional<Interval> enc;
  try {
    enc = g.eval(box);
  } catch (const IntervalError&) {
  }
  if (enc) {
    if (enc->mag() <= bound) return;
    if (enc->lo > bound || enc->hi < -bound)
      throw CertificationError(what + " exceeds " + to_string(bound) + " on " + box_string(box) + ": " +
                               enc->to_string());
  }
  std::size_t axis = 0;
  for (std::size_t i = 1; i < box.size(); ++i)
    if (box[i].width() > box[axis].width()) axis = i;
  if (depth >= opts.max_depth || box[axis].width() < opts.min_width)
    throw CertificationError("cannot decide " + what + " <= " + to_string(bound) + " on " + box_string(box));
  const Rational mid = box[axis].mid();
  auto left = box, right = box;
  left[axis] = Interval(box[axis].lo, mid);
  right[axis] = Interval(mid, box[axis].hi);
  prove_bound(g, left, bound, depth + 1, opts, what);
  prove_bound(g, right, bound, depth + 1, opts, what);
}

}  // namespace

BoundCertificate certify(const StrongParam& f, unsigned k, const Rational& bound, const CertifyOptions& opts) {
  if (f.coords.size() != f.n) throw Error("chart has wrong number of coordinates");
  bool affine = true;
  for (const auto& c : f.coords) {
    if (c.nvars() != f.m) throw Error("chart coordinate arity differs from m");
    if (c.power != 0 || c.num.total_degree() > 1) affine = false;
  }
  const std::vector<Interval> unit(f.m, Interval(Rational(0), Rational(1)));
  for (unsigned j = 0; j < f.n; ++j)
    for (const auto& alpha : monomials(f.m, k)) {
      std::string what = "|d^(";
      for (std::size_t i = 0; i < alpha.entries.size(); ++i) what += (i ? "," : "") + std::to_string(alpha.entries[i]);
      what += ") f_" + std::to_string(j + 1) + "|";
      prove_bound(f.coords[j].partial(alpha), unit, bound, 0, opts, what);
    }
  return BoundCertificate{k, bound, affine ? CertMethod::Exact : CertMethod::IntervalVerified};
}

QPoint invert_coordinates(const QPoint& a, const std::vector<unsigned>& I) {
  QPoint b = a;
  for (unsigned i : I) {
    if (i >= a.size()) throw Error("coordinate index out of range");
    if (a[i] == 0) throw Error("cannot invert a zero coordinate");
    b[i] = 1 / a[i];
  }
  return b;
}

std::vector<StrongParam> rescale_to_unit(const StrongParam& f, unsigned c, unsigned k) {
  if (c == 0) throw Error("rescale_to_unit needs c >= 1");
  const Rational step = (1 - Rational(1, c)) / c;
  const Rational scale_v(1, c);
  std::vector<StrongParam> out;
  std::vector<unsigned> idx(f.m, 0);
  while (true) {
    std::vector<Rational> offset(f.m), scale(f.m, scale_v);
    for (unsigned i = 0; i < f.m; ++i) offset[i] = step * idx[i];
    StrongParam g;
    g.m = f.m;
    g.n = f.n;
    g.name = f.name + "@";
    for (unsigned i = 0; i < f.m; ++i) g.name += (i ? "," : "") + std::to_string(idx[i]);
    for (const auto& coord : f.coords) g.coords.push_back(coord.affine_substitute(offset, scale));
    g.preimage = [parent = f.preimage, offset, c](const QPoint& x) -> std::optional<QPoint> {
      if (!parent) return std::nullopt;
      auto t = parent(x);
      if (!t) return std::nullopt;
      QPoint s(t->size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = ((*t)[i] - offset[i]) * c;
        if (s[i] < 0 || s[i] > 1) return std::nullopt;
      }
      return s;
    };
    g.certificate = BoundCertificate{k, 1, CertMethod::Declared};
    out.push_back(std::move(g));
    unsigned pos = 0;
    while (pos < f.m && ++idx[pos] > c) idx[pos++] = 0;
    if (pos == f.m) break;
  }
  return out;
}

std::vector<std::vector<MPoly>> chain_rule_polys(unsigned k) {
  const unsigned nv = std::max(k, 1u);
  std::vector<std::vector<MPoly>> p(k + 2, std::vector<MPoly>(k + 1, MPoly(nv)));
  if (k == 0) return p;
  p[1][1] = MPoly::var(nv, 0);
  for (unsigned j = 1; j < k; ++j)
    for (unsigned i = 1; i <= j + 1; ++i) {
      MPoly next = MPoly::var(nv, 0) * p[i - 1][j];
      for (unsigned l = 0; l + 1 < nv && l < j; ++l) next = next + MPoly::var(nv, l + 1) * p[i][j].partial(l);
      p[i][j + 1] = next;
    }
  return p;
}

namespace {

std::vector<Rational> derivative_values(const RatFunc1& f, unsigned k, const Rational& t) {
  const Rational d = f.den(t);
  if (d == 0) throw Error("pole at " + to_string(t));
  const auto N = f.derivative_numerators(k);
  std::vector<Rational> v;
  Rational dp = d;
  for (unsigned j = 0; j <= k; ++j) {
    v.push_back(N[j](t) / dp);
    dp *= d;
  }
  return v;
}

}  // namespace

Rational compose_derivative(const RatFunc1& f, const RatFunc1& g, unsigned k, const Rational& t) {
  const auto gv = derivative_values(g, k, t);
  const auto fv = derivative_values(f, k, gv[0]);
  if (k == 0) return fv[0];
  const auto p = chain_rule_polys(k);
  const std::vector<Rational> x(gv.begin() + 1, gv.end());
  Rational acc = 0;
  for (unsigned i = 1; i <= k; ++i) acc += fv[i] * p[i][k](x);
  return acc;
}

}  // namespace ratcover
