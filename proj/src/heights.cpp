#include "ratcover/heights.hpp"

#include "ratcover/enumerate.hpp"
#include "ratcover/linalg.hpp"

#include <algorithm>

namespace ratcover {

Integer height_rat(const Rational& q) {
  const Integer n = abs(q.get_num());
  return std::max(n, Integer(q.get_den()));
}

Integer height_point(const std::vector<Rational>& a) {
  Integer h = 0;
  for (const auto& q : a) h = std::max(h, height_rat(q));
  return h;
}

void LambdaSpec::validate() const {
  if (d == 0) throw Error("lambda needs d >= 1");
  if (mode == Mode::Independent && !relations.empty())
    throw Error("independent lambda cannot carry relations");
  if (mode == Mode::Dependent && relations.empty()) throw Error("dependent lambda needs at least one relation");
  for (const auto& r : relations)
    if (r.size() != d) throw Error("relation vector has wrong length");
  if (values && values->size() != d) throw Error("lambda values have wrong length");
  if (!relations.empty()) {
    std::vector<Rational> flat;
    for (const auto& r : relations) flat.insert(flat.end(), r.begin(), r.end());
    if (rank(QMatrix(relations.size(), d, flat)) != relations.size())
      throw Error("relations are not linearly independent");
  }
  if (values)
    for (const auto& r : relations) {
      Rational dot = 0;
      for (unsigned i = 0; i < d; ++i) dot += r[i] * (*values)[i];
      if (dot != 0) throw Error("declared relation is not satisfied by lambda");
    }
}

LambdaHeight min_height_affine(const std::vector<Rational>& base,
                               const std::vector<std::vector<Rational>>& directions) {
  const std::size_t N = base.size();
  LambdaHeight best{height_point(base), base};
  if (directions.empty()) return best;

  // Reduced echelon rows R_i with pivot p_i: every point of the space is
  // x0 + sum y_i R_i where y_i = x[p_i], and H(x) >= max H(y_i).
  std::vector<Rational> flat;
  for (const auto& r : directions) {
    if (r.size() != N) throw Error("direction vector has wrong length");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  QMatrix m(directions.size(), N, flat);
  std::vector<std::vector<Rational>> rows;
  std::vector<std::size_t> pivots;
  {
    // Row reduce a copy and read off pivots.
    std::size_t row = 0;
    for (std::size_t col = 0; col < N && row < m.rows(); ++col) {
      std::size_t p = row;
      while (p < m.rows() && m(p, col) == 0) ++p;
      if (p == m.rows()) continue;
      for (std::size_t j = 0; j < N; ++j) std::swap(m(p, j), m(row, j));
      const Rational inv = 1 / m(row, col);
      for (std::size_t j = 0; j < N; ++j) m(row, j) *= inv;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i == row || m(i, col) == 0) continue;
        const Rational f = m(i, col);
        for (std::size_t j = 0; j < N; ++j) m(i, j) -= f * m(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      std::vector<Rational> r(N);
      for (std::size_t j = 0; j < N; ++j) r[j] = m(i, j);
      rows.push_back(std::move(r));
    }
  }
  std::vector<Rational> x0 = base;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const Rational y = base[pivots[i]];
    for (std::size_t j = 0; j < N; ++j) x0[j] -= y * rows[i][j];
  }

  const std::size_t s = pivots.size();
  for (Integer h = 1; h < best.height; ++h) {
    const auto pool = rationals_up_to(h);
    std::vector<std::size_t> idx(s, 0);
    std::optional<LambdaHeight> found;
    while (true) {
      bool at_level = false;
      std::vector<Rational> x = x0;
      for (std::size_t i = 0; i < s; ++i) {
        const Rational& y = pool[idx[i]];
        if (height_rat(y) == h) at_level = true;
        if (y != 0)
          for (std::size_t j = 0; j < N; ++j) x[j] += y * rows[i][j];
      }
      if (at_level) {
        const Integer hx = height_point(x);
        if (hx <= h && (!found || hx < found->height)) found = LambdaHeight{hx, x};
      }
      std::size_t pos = 0;
      while (pos < s && ++idx[pos] == pool.size()) idx[pos++] = 0;
      if (pos == s) break;
    }
    if (found) return *found;
  }
  return best;
}

LambdaHeight height_lambda(const std::vector<Rational>& q, const LambdaSpec& spec) {
  spec.validate();
  if (q.size() != spec.d) throw Error("coordinate vector length differs from d");
  if (spec.mode == LambdaSpec::Mode::Independent) return LambdaHeight{height_point(q), q};
  return min_height_affine(q, spec.relations);
}

std::optional<PolyHeight> height_poly_d(const AlgNumber& alpha, unsigned d) {
  if (d == 0) throw Error("height_poly_d needs d >= 1");
  const int delta = alpha.degree();
  if (static_cast<unsigned>(delta) > d) return std::nullopt;
  // Since the minimal polynomial p is irreducible, the monic degree-d
  // polynomials vanishing at alpha are exactly p~ * q with q monic of
  // degree d - delta.
  const UPoly pm = alpha.minpoly().monic();
  const unsigned s = d - static_cast<unsigned>(delta);
  auto to_xi = [d](const UPoly& P) {
    std::vector<Rational> xi(d);
    for (unsigned i = 1; i <= d; ++i) xi[i - 1] = P.coeff(d - i);
    return xi;
  };
  auto x_pow = [](unsigned k) {
    std::vector<Rational> c(k + 1);
    c[k] = 1;
    return UPoly(std::move(c));
  };
  const std::vector<Rational> base = to_xi(pm * x_pow(s));
  std::vector<std::vector<Rational>> dirs;
  for (unsigned i = 0; i < s; ++i) dirs.push_back(to_xi(pm * x_pow(i)));
  const LambdaHeight r = min_height_affine(base, dirs);
  return PolyHeight{r.height, r.witness};
}

std::optional<PolyHeight> height_poly_d(const Rational& alpha, unsigned d) {
  return height_poly_d(AlgNumber::rational(alpha), d);
}

}  // namespace ratcover
