// Rationals and rational points of bounded height, exact membership
// predicates, and the projection pi(lambda, a_1, ..., a_n).
#pragma once

#include "ratcover/algebraic.hpp"
#include "ratcover/linalg.hpp"
#include "ratcover/mpoly.hpp"
#include "ratcover/number.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ratcover {

/// Every rational of height <= T exactly once, ordered by height, then
/// |numerator|, then denominator, positive before negative. Pull-based and
/// restartable.
class RationalStream {
 public:
  explicit RationalStream(Integer T);
  std::optional<Rational> next();
  void restart();

 private:
  Integer T_;
  Integer h_, a_, b_;
  bool pending_negative_ = false;
  Rational last_;
  bool advance();
};

std::vector<Rational> rationals_up_to(const Integer& T);
/// Comparison consistent with RationalStream order.
bool stream_less(const Rational& x, const Rational& y);

struct Constraint {
  enum class Rel { Eq, Gt, Lt };
  MPoly poly;
  Rel rel = Rel::Eq;
};

/// Solves for some coordinates given the others: `free` lists the free
/// coordinate indices; `solve` returns the full point or nullopt.
struct GraphSolver {
  std::vector<unsigned> free;
  std::function<std::optional<QPoint>(const QPoint& free_values)> solve;
};

class MembershipPredicate {
 public:
  enum class Kind { PolynomialSystem, PowerGraph, Custom };

  static MembershipPredicate polynomial_system(unsigned n, std::vector<Constraint> constraints);
  /// {(a,b,c) : 1 < a,b < 2, c = a^b}, decided by exact q-th root extraction.
  static MembershipPredicate power_graph();
  static MembershipPredicate custom(unsigned n, std::string name, std::function<bool(const QPoint&)> test);

  /// Lets set_points enumerate only the free coordinates. The solver must
  /// return exactly the points of the set over the given free values.
  MembershipPredicate& with_solver(GraphSolver solver);

  Kind kind() const { return kind_; }
  unsigned arity() const { return n_; }
  const std::string& name() const { return name_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  bool operator()(const QPoint& p) const;
  const std::optional<GraphSolver>& solver() const { return solver_; }

 private:
  Kind kind_ = Kind::Custom;
  unsigned n_ = 0;
  std::string name_;
  std::vector<Constraint> constraints_;
  std::function<bool(const QPoint&)> test_;
  std::optional<GraphSolver> solver_;
};

/// Lazy odometer over rationals_up_to(T)^n (last coordinate fastest),
/// yielding the members of the predicate.
class PointStream {
 public:
  PointStream(const MembershipPredicate& pred, const Integer& T);
  std::optional<QPoint> next();

 private:
  const MembershipPredicate& pred_;
  std::vector<Rational> pool_;
  std::vector<std::size_t> idx_;
  bool done_ = false;
};

/// X(Q, T) in odometer order. Uses the predicate's solver when present,
/// and power_curve_points for the power graph.
std::vector<QPoint> set_points(const MembershipPredicate& pred, const Integer& T);

/// Rational points (a, b, c) with 1 < a, b < 2, c = a^b and height <= T.
std::vector<QPoint> power_curve_points(const Integer& T);

/// Parses "x^2+y^2-1=0; x>0" or "power-graph". Variables are x, y, z, w
/// or x1, x2, ...; arity is `n` when nonzero, otherwise inferred.
MembershipPredicate parse_predicate(const std::string& text, unsigned n = 0);
MPoly parse_mpoly(const std::string& text, unsigned n);

using LambdaEntry = std::variant<Rational, AlgNumber>;

/// (lambda . a_1, ..., lambda . a_n) exactly. All algebraic entries of
/// lambda must be the same number; otherwise this throws.
std::vector<NFElement> project_lambda(const std::vector<LambdaEntry>& lambda,
                                      const std::vector<std::vector<Rational>>& a);
std::vector<Rational> project_lambda(const std::vector<Rational>& lambda,
                                     const std::vector<std::vector<Rational>>& a);

std::string format_point(const QPoint& p);
QPoint parse_point(const std::string& text);

}  // namespace ratcover
