#include "ratcover/cover.hpp"

#include "ratcover/enumerate.hpp"
#include "ratcover/heights.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace ratcover {

Integer count_J_exact(unsigned m, unsigned long D, unsigned long b) {
  // dp[u]: ways to place the values 0..j on exactly u of the D positions.
  std::vector<Integer> dp(D + 1, 0);
  dp[0] = 1;
  for (unsigned long j = 0; j <= b; ++j) {
    const Integer cap = dim_E(m, static_cast<long>(j));
    std::vector<Integer> next(D + 1, 0);
    for (unsigned long u = 0; u <= D; ++u) {
      if (dp[u] == 0) continue;
      for (unsigned long c = 0; u + c <= D && Integer(c) <= cap; ++c)
        next[u + c] += dp[u] * binomial(static_cast<long>(D - u), static_cast<long>(c));
    }
    dp = std::move(next);
  }
  // Remaining positions all take the uncapped value b+1.
  Integer total = 0;
  for (const auto& v : dp) total += v;
  return total;
}

BoundConstant bound_constant_K(unsigned m, unsigned n, unsigned e, JMode mode) {
  if (m >= n) throw Error("bound constant requires m < n");
  if (m == 0 || e == 0) throw Error("bound constant requires m >= 1 and e >= 1");
  const unsigned long D = to_ulong(dim_D(n, e), "D(n,e)");
  const unsigned long b = b_of(m, n, e);
  BoundConstant r;
  r.c = ipow(dim_D(m, static_cast<long>(b + 1)), e);
  const bool exact = mode == JMode::Exact || (mode == JMode::Auto && D <= 12);
  r.J_exact = exact;
  r.J_count = exact ? count_J_exact(m, D, b) : ipow(Integer(b + 2), D);
  r.K = r.J_count * factorial(D) * ipow(r.c, D);
  return r;
}

Rational radius_r(const Integer& K, const ExponentProfile& prof, const Integer& T) {
  if (T < 1) throw Error("height bound must be >= 1");
  const unsigned long B = to_ulong(prof.B, "B");
  const unsigned long neD = static_cast<unsigned long>(prof.n) * prof.e * prof.D;
  // K 2^{-jB} <= T^{-neD}  iff  K T^{neD} <= 2^{jB}.
  const Integer X = K * ipow(T, neD);
  unsigned long L = 0;
  if (X > 1) L = bit_length(X - 1);
  const unsigned long j = (L + B - 1) / B;
  const Rational r = make_rational(1, ipow(Integer(2), j));
  if (Rational(K) * rpow(r, B) * Rational(ipow(T, neD)) > 1) throw Error("radius certification failed");
  if (r < 1 && Rational(K) * rpow(2 * r, B) * Rational(ipow(T, neD)) <= 1)
    throw Error("radius is not maximal");
  return r;
}

Integer count_bound(const Integer& K, const ExponentProfile& prof, const Integer& T) {
  const unsigned long B = to_ulong(prof.B, "B");
  const unsigned long mneD = static_cast<unsigned long>(prof.m) * prof.n * prof.e * prof.D;
  return ceil_root(ipow(K, prof.m) * ipow(T, mneD), B);
}

Tiling::Tiling(unsigned m, const Rational& r) : m_(m), r_(r) {
  if (m == 0) throw Error("tiling needs m >= 1");
  if (!(r > 0 && r <= 1)) throw Error("tiling radius must lie in (0, 1]");
  if (2 * r >= 1) return;
  const Rational inv = 1 / (2 * r);
  Integer N;
  mpz_cdiv_q(N.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
  per_axis_ = to_ulong(N, "boxes per axis");
}

Rational Tiling::axis_center(std::size_t j) const {
  if (per_axis_ == 1) return Rational(1, 2);
  return std::min(Rational((2 * Integer(j) + 1) * r_), Rational(1 - r_));
}

std::size_t Tiling::box_count() const {
  std::size_t total = 1;
  for (unsigned i = 0; i < m_; ++i) total *= per_axis_;
  return total;
}

QPoint Tiling::center(std::size_t box) const {
  QPoint c(m_);
  for (unsigned i = m_; i-- > 0;) {
    c[i] = axis_center(box % per_axis_);
    box /= per_axis_;
  }
  return c;
}

bool Tiling::contains(std::size_t box, const QPoint& t) const {
  if (t.size() != m_ || box >= box_count()) return false;
  const QPoint c = center(box);
  for (unsigned i = 0; i < m_; ++i)
    if (abs(t[i] - c[i]) > r_) return false;
  return true;
}

std::size_t Tiling::box_of(const QPoint& t) const {
  if (t.size() != m_) throw Error("parameter arity differs from tiling dimension");
  std::size_t idx = 0;
  for (unsigned i = 0; i < m_; ++i) {
    if (t[i] < 0 || t[i] > 1) throw Error("parameter " + to_string(t[i]) + " lies outside the tiled cube");
    // Interval j (0-based) covers [2jr, 2(j+1)r]; the smallest one holding
    // t is ceil(t / 2r) - 1, clamped at 0. Only the last center is clipped.
    std::size_t j = 0;
    if (per_axis_ > 1) {
      const Rational q = t[i] / (2 * r_);
      Integer c;
      mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      if (c > 0) j = to_ulong(c - 1, "box index");
      if (j >= per_axis_) j = per_axis_ - 1;
    }
    if (abs(t[i] - axis_center(j)) > r_) throw Error("tiling failed to cover " + to_string(t[i]));
    idx = idx * per_axis_ + j;
  }
  return idx;
}

std::vector<QPoint> tile_unit_cube(unsigned m, const Rational& r) {
  Tiling t(m, r);
  std::vector<QPoint> out;
  for (std::size_t i = 0; i < t.box_count(); ++i) out.push_back(t.center(i));
  return out;
}

namespace {

// Exact chart samples spread over the box (clipped to [0,1]^m).
std::vector<QPoint> box_samples(const StrongParam& param, const Tiling& tiling, std::size_t box, std::size_t want) {
  const QPoint c = tiling.center(box);
  unsigned per_axis = 1;
  while (true) {
    std::size_t total = 1;
    for (unsigned i = 0; i < param.m; ++i) total *= per_axis;
    if (total >= want) break;
    ++per_axis;
  }
  std::vector<std::vector<Rational>> axis(param.m);
  for (unsigned i = 0; i < param.m; ++i) {
    const Rational lo = std::max(Rational(0), Rational(c[i] - tiling.r()));
    const Rational hi = std::min(Rational(1), Rational(c[i] + tiling.r()));
    for (unsigned s = 0; s < per_axis; ++s) axis[i].push_back(lo + (hi - lo) * make_rational(s + 1, per_axis + 1));
  }
  std::vector<QPoint> out;
  std::vector<unsigned> idx(param.m, 0);
  while (true) {
    QPoint t(param.m);
    for (unsigned i = 0; i < param.m; ++i) t[i] = axis[i][idx[i]];
    out.push_back(param(t));
    unsigned pos = 0;
    while (pos < param.m && ++idx[pos] == per_axis) idx[pos++] = 0;
    if (pos == param.m) break;
  }
  return out;
}

}  // namespace

CoverCertificate cover_points(const StrongParam& param, unsigned e, const Integer& T,
                              const std::vector<QPoint>& points, JMode mode) {
  CoverCertificate cert;
  auto& P = cert.params;
  P.profile = profile(param.m, param.n, e, mode);
  if (!param.certificate || param.certificate->order < P.profile.k || param.certificate->bound > 1)
    throw Error("chart '" + param.name + "' lacks a derivative certificate of order " +
                std::to_string(P.profile.k) + " with bound 1");
  P.T = T;
  P.r = radius_r(P.profile.K, P.profile, T);
  P.count_bound = count_bound(P.profile.K, P.profile, T);
  const Tiling tiling(param.m, P.r);
  P.boxes_per_axis = tiling.per_axis();

  std::map<std::size_t, std::vector<std::size_t>> by_box;
  for (const auto& x : points) {
    if (x.size() != param.n) throw Error("point arity differs from chart target dimension");
    if (height_point(x) > T) throw Error("point " + format_point(x) + " exceeds height " + T.get_str());
    auto t = param.checked_preimage(x);
    if (!t) throw Error("point " + format_point(x) + " has no preimage under chart '" + param.name + "'");
    const std::size_t i = cert.points.size();
    cert.points.push_back(x);
    cert.preimages.push_back(*t);
    cert.box.push_back(tiling.box_of(*t));
    cert.assignment.push_back(-1);
    by_box[cert.box.back()].push_back(i);
  }

  const unsigned long D = P.profile.D;
  const unsigned n = param.n;
  for (const auto& [box, members] : by_box) {
    std::vector<QPoint> pts;
    for (auto i : members) pts.push_back(cert.points[i]);
    if (pts.size() == D) {
      const auto db = denominator_bound(pts, n, e, T);
      if (!db.check) throw Error("denominator bound failed in box " + std::to_string(box));
      ++cert.denominator_checks;
    }
    long chosen = -1;
    for (std::size_t h = 0; h < cert.hypersurfaces.size() && chosen < 0; ++h)
      if (cert.hypersurfaces[h].vanishes_on(pts)) chosen = static_cast<long>(h);
    if (chosen < 0) {
      std::vector<QPoint> aug = pts;
      for (auto& s : box_samples(param, tiling, box, D + 2)) aug.push_back(std::move(s));
      std::optional<Hypersurface> fit = fit_hypersurface(aug, n, e);
      if (!fit) fit = fit_hypersurface(pts, n, e);
      if (fit) {
        auto it = std::find(cert.hypersurfaces.begin(), cert.hypersurfaces.end(), *fit);
        chosen = static_cast<long>(it - cert.hypersurfaces.begin());
        if (it == cert.hypersurfaces.end()) cert.hypersurfaces.push_back(*fit);
      }
    }
    if (chosen < 0) {
      cert.violations.push_back(box);
      continue;
    }
    for (auto i : members) cert.assignment[i] = chosen;
  }
  return cert;
}

ClusterReport cluster_determinant_check(const StrongParam& param, unsigned e, const Rational& r, unsigned trials,
                                        std::uint64_t seed, JMode mode) {
  if (!(r > 0 && r <= 1)) throw Error("cluster radius must lie in (0, 1]");
  const ExponentProfile prof = profile(param.m, param.n, e, mode);
  if (!param.certificate || param.certificate->order < prof.k || param.certificate->bound > 1)
    throw Error("chart '" + param.name + "' lacks a derivative certificate of order " + std::to_string(prof.k));
  ClusterReport rep;
  rep.bound = Rational(prof.K) * rpow(r, to_ulong(prof.B, "B"));
  std::mt19937_64 rng(seed);
  const unsigned long grid = 1ul << 20;
  std::uniform_int_distribution<unsigned long> pick(0, grid);
  auto uniform = [&](const Rational& lo, const Rational& hi) -> Rational {
    return lo + (hi - lo) * make_rational(pick(rng), grid);
  };
  for (unsigned trial = 0; trial < trials; ++trial) {
    QPoint a0(param.m);
    for (auto& v : a0) v = uniform(0, 1);
    std::vector<QPoint> pts;
    for (unsigned long i = 0; i < prof.D; ++i) {
      QPoint t(param.m);
      for (unsigned j = 0; j < param.m; ++j)
        t[j] = uniform(std::max(Rational(0), Rational(a0[j] - r)), std::min(Rational(1), Rational(a0[j] + r)));
      pts.push_back(param(t));
    }
    const Rational d = abs(det(monomial_matrix(pts, param.n, e)));
    ++rep.trials;
    if (d >= rep.bound) ++rep.failures;
    rep.max_abs_det = std::max(rep.max_abs_det, d);
  }
  rep.max_ratio = rep.max_abs_det / rep.bound;
  return rep;
}

}  // namespace ratcover
