// Exact linear algebra over Q and the hypersurface objects built on it.
#pragma once

#include "ratcover/exponents.hpp"
#include "ratcover/number.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ratcover {

using QPoint = std::vector<Rational>;

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<Rational>& entries() const { return entries_; }

  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  bool operator==(const QMatrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> entries_;
};

/// Bareiss elimination on the integer matrix obtained by clearing
/// denominators column by column.
Rational det(const QMatrix& m);
std::size_t rank(const QMatrix& m);

/// Right kernel basis from the reduced row echelon form: pivots left to
/// right, one vector per free column in index order, each scaled to a
/// primitive integer vector with first nonzero entry positive.
std::vector<std::vector<Integer>> kernel_basis(const QMatrix& m);

/// Row per point, column per monomial of monomials(n, e).
QMatrix monomial_matrix(const std::vector<QPoint>& points, unsigned n, unsigned e);

struct Hypersurface {
  unsigned n = 0;
  unsigned e = 0;
  std::vector<Integer> coeffs;  ///< indexed by monomials(n, e)

  /// Primitive, first nonzero coefficient positive. Throws on the zero vector.
  static Hypersurface canonical(unsigned n, unsigned e, std::vector<Integer> coeffs);
  Rational evaluate(const QPoint& x) const;
  bool vanishes_on(const std::vector<QPoint>& pts) const;

  /// "n e; c_0 c_1 ... c_{D-1}"
  std::string serialize() const;
  static Hypersurface parse(const std::string& line);
  bool operator==(const Hypersurface&) const = default;
};

bool on_common_hypersurface(const std::vector<QPoint>& points, unsigned n, unsigned e);

/// First kernel basis vector as a canonical hypersurface, or nullopt when
/// the monomial matrix has full column rank.
std::optional<Hypersurface> fit_hypersurface(const std::vector<QPoint>& points, unsigned n, unsigned e);

struct DenominatorBound {
  Integer s;
  bool check = false;
};

/// s = prod_i prod_j den(a_ij)^e; check is s <= t^{neD} and s * det in Z.
/// Requires D(n,e) points with every coordinate height <= t.
DenominatorBound denominator_bound(const std::vector<QPoint>& points, unsigned n, unsigned e,
                                   const Integer& t);

/// Sum over column selections j with #{nu : j_nu = j} <= rank_caps[j] of
/// det(column nu taken from summands[j_nu]). Exponential; N <= 8 only.
/// Throws if some cap is below the true rank of its summand.
Rational det_of_sum(const std::vector<QMatrix>& summands, const std::vector<unsigned>& rank_caps);

}  // namespace ratcover
