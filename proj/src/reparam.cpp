#include "ratcover/parametrize.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace ratcover {

namespace {

constexpr unsigned long kInverseBits = 80;

RatFunc1 times(const RatFunc1& a, const RatFunc1& b) {
  RatFunc1 r;
  r.num = a.num * b.num;
  r.den = a.den * b.den;
  r.lo = a.lo;
  r.hi = a.hi;
  if (!r.num.is_zero()) {
    const UPoly g = gcd(r.num, r.den);
    if (g.degree() > 0) {
      r.num = divmod(r.num, g).first;
      r.den = divmod(r.den, g).first;
    }
  }
  return r;
}

// x in [xa, xb] with f(x) = y, enclosed by bisection with exact sign tests
// down to width eps.
Interval inverse_at(const RatFunc1& f, const Rational& xa, const Rational& xb, const Rational& y, const Rational& eps) {
  Rational lo = xa, hi = xb;
  const int slo = sgn(f(lo) - y);
  if (slo == 0) return Interval(lo);
  if (sgn(f(hi) - y) == 0) return Interval(hi);
  while (hi - lo > eps) {
    const Rational mid = (lo + hi) / 2;
    const int s = sgn(f(mid) - y);
    if (s == 0) return Interval(mid);
    if (s == slo) lo = mid;
    else hi = mid;
  }
  return Interval(lo, hi);
}

// Cached polynomial data for evaluating one piece and its derivatives.
class PieceModel {
 public:
  PieceModel(const RatFunc1& f, const UniPiece& p, unsigned max_order) : f_(f), p_(p) {
    Pd_.push_back(p.P);
    for (unsigned j = 0; j < max_order; ++j) Pd_.push_back(Pd_.back().derivative());
    switch (p.base) {
      case UniPiece::Base::Constant:
        break;
      case UniPiece::Base::Affine: {
        lin_ = UPoly(std::vector<Rational>{p.x0, p.dx}).compose(p.P);
        for (unsigned j = 0; j <= max_order; ++j) linD_.push_back(j == 0 ? lin_ : linD_.back().derivative());
        RatFunc1 q;
        q.num = lin_;
        h_ = f.compose(q);
        hN_ = h_.derivative_numerators(max_order);
        break;
      }
      case UniPiece::Base::Inverse: {
        lin_ = UPoly(std::vector<Rational>{p.y0, p.dy}).compose(p.P);
        for (unsigned j = 0; j <= max_order; ++j) linD_.push_back(j == 0 ? lin_ : linD_.back().derivative());
        const RatFunc1 fp = f.derivative();
        RatFunc1 inv_fp;
        inv_fp.num = fp.den;
        inv_fp.den = fp.num;
        if (inv_fp.den.is_zero()) throw Error("inverse piece over a constant function");
        G_.push_back(inv_fp);
        for (unsigned i = 1; i < max_order; ++i) G_.push_back(times(G_.back().derivative(), inv_fp));
        chain_ = chain_rule_polys(max_order);
        break;
      }
    }
  }

  Interval eval(unsigned coord, unsigned order, const Interval& S) const {
    switch (p_.base) {
      case UniPiece::Base::Constant:
        if (order > 0) return Interval(Rational(0));
        return coord == 0 ? Interval(p_.x0) : Interval(f_(p_.x0));
      case UniPiece::Base::Affine:
        if (coord == 0) return ratcover::eval(linD_.at(order), S);
        return ratcover::eval(hN_.at(order), S) / ipow(ratcover::eval(h_.den, S), order + 1);
      case UniPiece::Base::Inverse:
        if (coord == 1) return ratcover::eval(linD_.at(order), S);
        return inverse_derivatives(order, S).back();
    }
    return Interval(Rational(0));
  }

  /// Enclosures of orders 0..k of both coordinates, out[c][j], sharing the
  /// work between orders.
  std::array<std::vector<Interval>, 2> eval_all(unsigned k, const Interval& S) const {
    std::array<std::vector<Interval>, 2> out;
    switch (p_.base) {
      case UniPiece::Base::Constant:
        for (unsigned c = 0; c < 2; ++c) out[c].assign(k + 1, Interval(Rational(0)));
        out[0][0] = Interval(p_.x0);
        out[1][0] = Interval(f_(p_.x0));
        break;
      case UniPiece::Base::Affine: {
        const Interval D = ratcover::eval(h_.den, S);
        Interval Dp = D;
        for (unsigned j = 0; j <= k; ++j) {
          out[0].push_back(ratcover::eval(linD_.at(j), S));
          out[1].push_back(ratcover::eval(hN_.at(j), S) / Dp);
          Dp = Dp * D;
        }
        break;
      }
      case UniPiece::Base::Inverse:
        out[0] = inverse_derivatives(k, S);
        for (unsigned j = 0; j <= k; ++j) out[1].push_back(ratcover::eval(linD_.at(j), S));
        break;
    }
    return out;
  }

 private:

  // u = P(s) over S, clipped to [0,1] where P maps.
  Interval u_range(const Interval& S) const {
    Interval U = ratcover::eval(Pd_[0], S);
    Interval r;
    r.lo = std::max(U.lo, Rational(0));
    r.hi = std::min(U.hi, Rational(1));
    if (r.hi < r.lo) r.hi = r.lo;
    return r;
  }

  // f is monotone on [xa, xb], so the hull of brackets around the inverse
  // images of U's endpoints encloses x. Brackets need only be narrow
  // compared with the image of U.
  Interval x_range(const Interval& U) const {
    const Rational floor = dyadic(1, kInverseBits);
    const Rational eps = (p_.xb - p_.xa) * std::max(floor, ceil_dyadic(U.width() / 64, 40));
    const Interval a = inverse_at(f_, p_.xa, p_.xb, p_.y0 + p_.dy * U.lo, eps);
    if (U.is_point()) return a;
    return hull(a, inverse_at(f_, p_.xa, p_.xb, p_.y0 + p_.dy * U.hi, eps));
  }

  // Orders 0..k of x(s) = g(y0 + dy P(s)) with g = f^{-1}, by the chain
  // rule with G_i = g^{(i)} as functions of x.
  std::vector<Interval> inverse_derivatives(unsigned k, const Interval& S) const {
    const Interval X = x_range(u_range(S));
    std::vector<Interval> out{X};
    if (k == 0) return out;
    // Short endpoints keep the evaluation of G cheap.
    const Interval Xr(std::max(p_.xa, floor_dyadic(X.lo, 32)), std::min(p_.xb, ceil_dyadic(X.hi, 32)));
    std::vector<Interval> pd, G;
    for (unsigned j = 1; j <= k; ++j) pd.push_back(ratcover::eval(Pd_[j], S));
    while (pd.size() < chain_[1][k].nvars()) pd.push_back(Interval(Rational(0)));
    for (unsigned i = 1; i <= k; ++i) G.push_back(ratcover::eval(G_[i - 1], Xr));
    for (unsigned order = 1; order <= k; ++order) {
      Interval acc(Rational(0));
      Rational dyi = 1;
      for (unsigned i = 1; i <= order; ++i) {
        dyi *= p_.dy;
        acc = acc + Interval(dyi) * G[i - 1] * chain_[i][order].eval(pd);
      }
      out.push_back(acc);
    }
    return out;
  }

  const RatFunc1& f_;
  const UniPiece& p_;
  std::vector<UPoly> Pd_;
  UPoly lin_;
  std::vector<UPoly> linD_;
  RatFunc1 h_;
  std::vector<UPoly> hN_;
  std::vector<RatFunc1> G_;
  std::vector<std::vector<MPoly>> chain_;
};

// Per order j <= k, the sup over s in [0,1] and both coordinates of the
// enclosures: a fixed initial grid, bisecting cells whose enclosure cannot
// be formed.
std::vector<Rational> sweep_sup(const PieceModel& model, unsigned k, const CertifyOptions& opts) {
  std::vector<Rational> best(k + 1, Rational(0));
  std::vector<std::pair<Interval, unsigned>> work;
  const unsigned cells = 32;
  for (unsigned i = 0; i < cells; ++i) work.push_back({Interval(make_rational(i, cells), make_rational(i + 1, cells)), 5});
  while (!work.empty()) {
    auto [S, depth] = work.back();
    work.pop_back();
    try {
      const auto v = model.eval_all(k, S);
      for (unsigned j = 0; j <= k; ++j) best[j] = std::max({best[j], v[0][j].mag(), v[1][j].mag()});
      continue;
    } catch (const IntervalError&) {
    }
    if (depth >= opts.max_depth || S.width() < opts.min_width)
      throw CertificationError("no finite bound for derivatives up to order " + std::to_string(k) + " on s in " +
                               S.to_string());
    const Rational mid = S.mid();
    work.push_back({Interval(S.lo, mid), depth + 1});
    work.push_back({Interval(mid, S.hi), depth + 1});
  }
  return best;
}

// Rational points splitting (lo,hi) near the real roots of p there: exact
// roots are kept, others replaced by the shortest dyadic in a bracket of
// width 2^-16 of the range around the root or root cluster. Short cuts keep the
// coefficients of composed pieces small.
std::vector<Rational> break_points(const UPoly& p, const Rational& lo, const Rational& hi) {
  std::vector<Rational> out;
  if (p.degree() <= 0) return out;
  const Rational width = (hi - lo) / (Integer(1) << 16);
  for (const auto& c : real_root_clusters(p, lo, hi, width)) {
    const Rational x = c.lo == c.hi ? c.lo : shortest_dyadic(c.lo, c.hi);
    if (lo < x && x < hi) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Interval subdivision: cells where h^(l) or h^(l+1) may vanish.
std::vector<Rational> interval_break_points(const PieceModel& model, unsigned coord, unsigned level) {
  const unsigned max_depth = 8;
  std::vector<Interval> ambiguous;
  std::vector<std::pair<Interval, unsigned>> work;
  const unsigned cells = 16;
  for (unsigned i = cells; i-- > 0;) work.push_back({Interval(make_rational(i, cells), make_rational(i + 1, cells)), 0});
  while (!work.empty()) {
    auto [S, depth] = work.back();
    work.pop_back();
    bool decided = false;
    try {
      decided = !model.eval(coord, level, S).contains_zero() && !model.eval(coord, level + 1, S).contains_zero();
    } catch (const IntervalError&) {
    }
    if (decided) continue;
    if (depth >= max_depth) {
      ambiguous.push_back(S);
      continue;
    }
    const Rational mid = S.mid();
    work.push_back({Interval(mid, S.hi), depth + 1});
    work.push_back({Interval(S.lo, mid), depth + 1});
  }
  std::vector<Rational> out;
  for (std::size_t i = 0; i < ambiguous.size();) {
    std::size_t j = i;
    while (j + 1 < ambiguous.size() && ambiguous[j + 1].lo == ambiguous[j].hi) ++j;
    const Rational x = (ambiguous[i].lo + ambiguous[j].hi) / 2;
    if (0 < x && x < 1) out.push_back(x);
    i = j + 1;
  }
  return out;
}

UPoly affine_poly(const Rational& c0, const Rational& c1) { return UPoly(std::vector<Rational>{c0, c1}); }

}  // namespace

Interval piece_derivative(const RatFunc1& f, const UniPiece& p, unsigned coord, unsigned order, const Interval& S) {
  PieceModel model(f, p, order + 1);
  return model.eval(coord, order, S);
}

void certify_piece(const RatFunc1& f, UniPiece& p, unsigned k, const CertifyOptions& opts) {
  PieceModel model(f, p, k);
  p.bounds = sweep_sup(model, k, opts);
  for (auto& b : p.bounds) b = ceil_dyadic(b, 20);
  if (p.base == UniPiece::Base::Affine) {
    // Exact endpoint replay against the declared bounds.
    for (const Rational& s : {Rational(0), Rational(1)})
      for (unsigned j = 0; j <= k; ++j)
        for (unsigned c = 0; c < 2; ++c)
          if (model.eval(c, j, Interval(s)).mag() > p.bounds[j])
            throw CertificationError("endpoint value exceeds declared bound at s = " + to_string(s));
  }
  p.method = p.base == UniPiece::Base::Constant ? CertMethod::Exact : CertMethod::IntervalVerified;
}

Reparametrization reparametrize_univariate(const RatFunc1& f, unsigned k, const CertifyOptions& opts) {
  if (k == 0) throw Error("reparametrization needs k >= 1");
  if (!(f.lo < f.hi)) throw Error("empty domain");
  f.check_pole_free();
  Reparametrization out{f, k, {}};

  // Level one: |f'| <= 1 or |f'| > 1 on each segment.
  const auto N = f.derivative_numerators(1);
  const UPoly crossing = N[1] * N[1] - pow(f.den, 4);
  std::vector<Rational> cuts{f.lo};
  for (const auto& x : break_points(crossing, f.lo, f.hi)) cuts.push_back(x);
  cuts.push_back(f.hi);

  std::vector<UniPiece> pieces;
  for (unsigned i = 0; i + 1 < cuts.size(); ++i) {
    const Rational a = cuts[i], b = cuts[i + 1], mid = (a + b) / 2;
    const Rational fp = N[1](mid) / rpow(f.den(mid), 2);
    UniPiece p;
    p.segment = i;
    if (abs(fp) <= 1) {
      p.base = UniPiece::Base::Affine;
      p.x0 = a;
      p.dx = b - a;
    } else {
      const UPoly sq = squarefree_part(N[1]);
      if (sq.degree() > 0 && (sq(a) == 0 || sq(b) == 0 || sturm_count(sturm_sequence(sq), a, b) > 0))
        throw Error("f' vanishes on a segment where |f'| > 1");
      p.base = UniPiece::Base::Inverse;
      p.xa = a;
      p.xb = b;
      p.y0 = f(a);
      p.dy = f(b) - f(a);
    }
    pieces.push_back(p);
    if (i > 0) {
      UniPiece c;
      c.base = UniPiece::Base::Constant;
      c.segment = i;
      c.x0 = a;
      c.P = UPoly::constant(0);
      out.pieces.push_back(c);
    }
  }

  // Levels 2..k: split where |h^(l)| is not monotone, orient so it
  // decreases, then substitute t^2.
  for (unsigned level = 2; level <= k; ++level) {
    std::vector<UniPiece> next;
    for (const auto& p : pieces) {
      PieceModel model(f, p, level + 1);
      std::vector<Rational> cut;
      const unsigned coord = p.base == UniPiece::Base::Affine ? 1 : 0;
      if (p.base == UniPiece::Base::Affine) {
        RatFunc1 q;
        q.num = affine_poly(p.x0, p.dx).compose(p.P);
        const auto hN = f.compose(q).derivative_numerators(level + 1);
        std::vector<Rational> c1 = break_points(hN[level], 0, 1), c2 = break_points(hN[level + 1], 0, 1);
        cut.insert(cut.end(), c1.begin(), c1.end());
        cut.insert(cut.end(), c2.begin(), c2.end());
      } else {
        cut = interval_break_points(model, coord, level);
      }
      std::sort(cut.begin(), cut.end());
      cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
      cut.insert(cut.begin(), Rational(0));
      cut.push_back(Rational(1));
      for (std::size_t i = 0; i + 1 < cut.size(); ++i) {
        const Rational a = cut[i], b = cut[i + 1];
        const Rational ha = model.eval(coord, level, Interval(a)).mid();
        const Rational hb = model.eval(coord, level, Interval(b)).mid();
        const UPoly theta = abs(ha) >= abs(hb) ? affine_poly(a, b - a) : affine_poly(b, a - b);
        UniPiece q = p;
        q.P = p.P.compose(theta.compose(UPoly(std::vector<Rational>{0, 0, 1})));
        next.push_back(q);
        if (i > 0) {
          UniPiece c = p;
          c.P = UPoly::constant(p.P(a));
          out.pieces.push_back(c);
        }
      }
    }
    pieces = std::move(next);
  }

  for (auto& p : pieces) out.pieces.push_back(std::move(p));
  std::stable_sort(out.pieces.begin(), out.pieces.end(),
                   [](const UniPiece& a, const UniPiece& b) { return a.segment < b.segment; });
  for (auto& p : out.pieces) certify_piece(f, p, k, opts);
  return out;
}

bool covers_domain(const Reparametrization& r) {
  // Segments in x must tile [lo, hi]; within a segment the u-images of the
  // non-constant pieces must tile [0, 1]. Shared endpoints are the finite
  // exceptional set.
  std::map<unsigned, std::pair<Rational, Rational>> seg_x;
  std::map<unsigned, std::vector<std::pair<Rational, Rational>>> seg_u;
  for (const auto& p : r.pieces) {
    if (p.base == UniPiece::Base::Constant || p.P.degree() <= 0) continue;
    const Rational u0 = p.P(0), u1 = p.P(1);
    seg_u[p.segment].push_back({std::min(u0, u1), std::max(u0, u1)});
    if (p.base == UniPiece::Base::Affine) {
      const Rational x1 = p.x0 + p.dx;
      seg_x[p.segment] = {std::min(p.x0, x1), std::max(p.x0, x1)};
    } else {
      seg_x[p.segment] = {p.xa, p.xb};
    }
  }
  for (auto& [seg, us] : seg_u) {
    std::sort(us.begin(), us.end());
    Rational reach = 0;
    for (const auto& [a, b] : us) {
      if (a > reach) return false;
      reach = std::max(reach, b);
    }
    if (reach != 1) return false;
  }
  Rational reach = r.f.lo;
  for (const auto& [seg, x] : seg_x) {
    if (x.first > reach) return false;
    reach = std::max(reach, x.second);
  }
  return reach == r.f.hi;
}

namespace {

std::string join_rationals(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}

std::vector<Rational> parse_rationals(const std::string& s) {
  std::vector<Rational> v;
  for (const auto& f : split(s, ',')) v.push_back(parse_rational(f));
  return v;
}

const char* base_name(UniPiece::Base b) {
  switch (b) {
    case UniPiece::Base::Constant: return "constant";
    case UniPiece::Base::Affine: return "affine";
    case UniPiece::Base::Inverse: return "inverse";
  }
  return "constant";
}

}  // namespace

void write_reparametrization(std::ostream& os, const Reparametrization& r) {
  os << "reparam k=" << r.k << '\n';
  os << "f num=" << join_rationals(r.f.num.coeffs()) << " den=" << join_rationals(r.f.den.coeffs())
     << " domain=" << to_string(r.f.lo) << ',' << to_string(r.f.hi) << '\n';
  for (const auto& p : r.pieces) {
    os << "piece " << base_name(p.base) << " segment=" << p.segment;
    switch (p.base) {
      case UniPiece::Base::Constant:
        os << " x0=" << to_string(p.x0);
        break;
      case UniPiece::Base::Affine:
        os << " x0=" << to_string(p.x0) << " dx=" << to_string(p.dx);
        break;
      case UniPiece::Base::Inverse:
        os << " xa=" << to_string(p.xa) << " xb=" << to_string(p.xb) << " y0=" << to_string(p.y0)
           << " dy=" << to_string(p.dy);
        break;
    }
    os << " P=" << (p.P.is_zero() ? std::string("0") : join_rationals(p.P.coeffs()))
       << " bounds=" << join_rationals(p.bounds) << " method=" << to_string(p.method) << '\n';
  }
}

Reparametrization read_reparametrization(std::istream& is) {
  Reparametrization r;
  std::string line;
  unsigned lineno = 0;
  auto fields = [&](const std::string& l) {
    std::map<std::string, std::string> kv;
    std::istringstream ss(l);
    std::string tok;
    ss >> tok;
    while (ss >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) {
        kv["#kind"] = tok;
        continue;
      }
      kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return kv;
  };
  auto need = [&](std::map<std::string, std::string>& kv, const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw Error("line " + std::to_string(lineno) + ": missing field " + key);
    return it->second;
  };
  bool have_header = false, have_f = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto kv = fields(line);
    try {
      if (line.starts_with("reparam ")) {
        r.k = static_cast<unsigned>(std::stoul(need(kv, "k")));
        have_header = true;
      } else if (line.starts_with("f ")) {
        r.f.num = UPoly(parse_rationals(need(kv, "num")));
        r.f.den = UPoly(parse_rationals(need(kv, "den")));
        const auto dom = parse_rationals(need(kv, "domain"));
        if (dom.size() != 2) throw Error("domain needs two endpoints");
        r.f.lo = dom[0];
        r.f.hi = dom[1];
        have_f = true;
      } else if (line.starts_with("piece ")) {
        UniPiece p;
        const std::string kind = need(kv, "#kind");
        p.segment = static_cast<unsigned>(std::stoul(need(kv, "segment")));
        if (kind == "constant") {
          p.base = UniPiece::Base::Constant;
          p.x0 = parse_rational(need(kv, "x0"));
        } else if (kind == "affine") {
          p.base = UniPiece::Base::Affine;
          p.x0 = parse_rational(need(kv, "x0"));
          p.dx = parse_rational(need(kv, "dx"));
        } else if (kind == "inverse") {
          p.base = UniPiece::Base::Inverse;
          p.xa = parse_rational(need(kv, "xa"));
          p.xb = parse_rational(need(kv, "xb"));
          p.y0 = parse_rational(need(kv, "y0"));
          p.dy = parse_rational(need(kv, "dy"));
        } else {
          throw Error("unknown piece kind " + kind);
        }
        p.P = UPoly(parse_rationals(need(kv, "P")));
        p.bounds = parse_rationals(need(kv, "bounds"));
        p.method = parse_cert_method(need(kv, "method"));
        r.pieces.push_back(std::move(p));
      } else {
        throw Error("unrecognized line");
      }
    } catch (const std::invalid_argument&) {
      throw Error("line " + std::to_string(lineno) + ": malformed number");
    } catch (const Error& e) {
      const std::string msg = e.what();
      if (msg.starts_with("line ")) throw;
      throw Error("line " + std::to_string(lineno) + ": " + msg);
    }
  }
  if (!have_header || !have_f) throw Error("reparametrization file lacks its header");
  return r;
}

}  // namespace ratcover
