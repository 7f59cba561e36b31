#include "ratcover/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace ratcover {

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw Error("QMatrix entry count does not match shape");
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("QMatrix shape mismatch");
  QMatrix r = a;
  for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] += b.entries_[i];
  return r;
}

Rational det(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error("det of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<Integer> a(n * n);
  Integer scale = 1;
  for (std::size_t j = 0; j < n; ++j) {
    Integer l = 1;
    for (std::size_t i = 0; i < n; ++i) l = lcm(l, m(i, j).get_den());
    scale *= l;
    for (std::size_t i = 0; i < n; ++i) a[i * n + j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * n + j]; };
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = t;
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return make_rational(sign * at(n - 1, n - 1), scale);
}

namespace {

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<Integer> primitive_positive(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& q : v) l = lcm(l, q.get_den());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& q : v) {
    out.push_back(q.get_num() * (l / q.get_den()));
    g = gcd(g, out.back());
  }
  if (g == 0) throw Error("zero vector has no primitive form");
  auto first = std::find_if(out.begin(), out.end(), [](const Integer& z) { return z != 0; });
  if (*first < 0) g = -g;
  for (auto& z : out) z /= g;
  return out;
}

}  // namespace

std::size_t rank(const QMatrix& m) {
  QMatrix c = m;
  return rref(c).size();
}

std::vector<std::vector<Integer>> kernel_basis(const QMatrix& m) {
  QMatrix r = m;
  const auto pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Integer>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
    basis.push_back(primitive_positive(v));
  }
  return basis;
}

QMatrix monomial_matrix(const std::vector<QPoint>& points, unsigned n, unsigned e) {
  const auto mons = monomials(n, e);
  QMatrix m(points.size(), mons.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != n) throw Error("point arity does not match n");
    for (std::size_t j = 0; j < mons.size(); ++j) {
      Rational v = 1;
      for (unsigned k = 0; k < n; ++k)
        if (mons[j].entries[k]) v *= rpow(points[i][k], mons[j].entries[k]);
      m(i, j) = v;
    }
  }
  return m;
}

Hypersurface Hypersurface::canonical(unsigned n, unsigned e, std::vector<Integer> coeffs) {
  if (coeffs.size() != to_ulong(dim_D(n, e), "D(n,e)")) throw Error("hypersurface coefficient count mismatch");
  std::vector<Rational> q(coeffs.begin(), coeffs.end());
  return Hypersurface{n, e, primitive_positive(q)};
}

Rational Hypersurface::evaluate(const QPoint& x) const {
  if (x.size() != n) throw Error("point arity does not match hypersurface");
  const auto mons = monomials(n, e);
  Rational acc = 0;
  for (std::size_t j = 0; j < mons.size(); ++j) {
    if (coeffs[j] == 0) continue;
    Rational v = coeffs[j];
    for (unsigned k = 0; k < n; ++k)
      if (mons[j].entries[k]) v *= rpow(x[k], mons[j].entries[k]);
    acc += v;
  }
  return acc;
}

bool Hypersurface::vanishes_on(const std::vector<QPoint>& pts) const {
  return std::all_of(pts.begin(), pts.end(), [&](const QPoint& p) { return evaluate(p) == 0; });
}

std::string Hypersurface::serialize() const {
  std::ostringstream os;
  os << n << ' ' << e << ';';
  for (const auto& c : coeffs) os << ' ' << c.get_str();
  return os.str();
}

Hypersurface Hypersurface::parse(const std::string& line) {
  const auto semi = line.find(';');
  if (semi == std::string::npos) throw Error("hypersurface line lacks ';': " + line);
  std::istringstream head(line.substr(0, semi));
  unsigned n = 0, e = 0;
  if (!(head >> n >> e)) throw Error("bad hypersurface header: " + line);
  std::istringstream body(line.substr(semi + 1));
  std::vector<Integer> c;
  std::string tok;
  while (body >> tok) {
    Integer z;
    if (z.set_str(tok, 10) != 0) throw Error("bad hypersurface coefficient: " + tok);
    c.push_back(z);
  }
  Hypersurface h = canonical(n, e, c);
  if (h.coeffs != c) throw Error("hypersurface is not in canonical form: " + line);
  return h;
}

bool on_common_hypersurface(const std::vector<QPoint>& points, unsigned n, unsigned e) {
  return rank(monomial_matrix(points, n, e)) < to_ulong(dim_D(n, e), "D(n,e)");
}

std::optional<Hypersurface> fit_hypersurface(const std::vector<QPoint>& points, unsigned n, unsigned e) {
  const auto basis = kernel_basis(monomial_matrix(points, n, e));
  if (basis.empty()) return std::nullopt;
  Hypersurface h = Hypersurface::canonical(n, e, basis.front());
  if (!h.vanishes_on(points)) throw Error("fitted hypersurface fails exact evaluation");
  return h;
}

DenominatorBound denominator_bound(const std::vector<QPoint>& points, unsigned n, unsigned e,
                                   const Integer& t) {
  const unsigned long D = to_ulong(dim_D(n, e), "D(n,e)");
  if (points.size() != D) throw Error("denominator_bound needs exactly D(n,e) points");
  DenominatorBound r;
  r.s = 1;
  for (const auto& p : points) {
    if (p.size() != n) throw Error("point arity does not match n");
    for (const auto& q : p) {
      const Integer h = std::max(Integer(abs(q.get_num())), Integer(q.get_den()));
      if (h > t) throw Error("coordinate " + to_string(q) + " exceeds height bound " + t.get_str());
      r.s *= ipow(q.get_den(), e);
    }
  }
  const Rational sd = r.s * det(monomial_matrix(points, n, e));
  r.check = r.s <= ipow(t, static_cast<unsigned long>(n) * e * D) && sd.get_den() == 1;
  return r;
}

Rational det_of_sum(const std::vector<QMatrix>& summands, const std::vector<unsigned>& rank_caps) {
  if (summands.empty()) throw Error("det_of_sum needs at least one summand");
  if (summands.size() != rank_caps.size()) throw Error("one rank cap per summand required");
  const std::size_t N = summands.front().rows();
  for (const auto& s : summands)
    if (s.rows() != N || s.cols() != N) throw Error("det_of_sum summand shape mismatch");
  if (N > 8) throw Error("det_of_sum is limited to N <= 8");
  for (std::size_t j = 0; j < summands.size(); ++j)
    if (rank(summands[j]) > rank_caps[j])
      throw Error("rank cap " + std::to_string(rank_caps[j]) + " is below the rank of summand " + std::to_string(j));

  const std::size_t J = summands.size();
  std::vector<std::size_t> sel(N, 0);
  std::vector<unsigned> used(J, 0);
  Rational total = 0;
  // Odometer over {0..J-1}^N, skipping tuples that exceed a cap.
  while (true) {
    std::fill(used.begin(), used.end(), 0);
    bool ok = true;
    for (auto s : sel)
      if (++used[s] > rank_caps[s]) ok = false;
    if (ok) {
      QMatrix m(N, N);
      for (std::size_t nu = 0; nu < N; ++nu)
        for (std::size_t i = 0; i < N; ++i) m(i, nu) = summands[sel[nu]](i, nu);
      total += det(m);
    }
    std::size_t pos = 0;
    while (pos < N && ++sel[pos] == J) sel[pos++] = 0;
    if (pos == N) break;
  }
  return total;
}

}  // namespace ratcover
