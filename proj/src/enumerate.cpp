#include "ratcover/enumerate.hpp"

#include "ratcover/heights.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <sstream>
#include <tuple>

namespace ratcover {

RationalStream::RationalStream(Integer T) : T_(std::move(T)) {
  if (T_ < 1) throw Error("height bound must be >= 1");
  restart();
}

void RationalStream::restart() {
  h_ = 1;
  a_ = 0;
  b_ = 1;
  pending_negative_ = false;
  last_ = Rational(-1);  // sentinel: nothing emitted yet
}

// Moves (a_, b_) to the next coprime pair of height h_, in the order
// (0..h-1, h) then (h, 1..h). Returns false when past height T.
bool RationalStream::advance() {
  while (true) {
    if (a_ < h_) {
      ++a_;
      if (a_ == h_) b_ = 1;
    } else if (b_ < h_) {
      ++b_;
    } else {
      ++h_;
      if (h_ > T_) return false;
      a_ = 0;
      b_ = h_;
    }
    if (gcd(a_, b_) == 1 && std::max(a_, b_) == h_) return true;
  }
}

std::optional<Rational> RationalStream::next() {
  if (pending_negative_) {
    pending_negative_ = false;
    return -last_;
  }
  if (last_ == -1 && h_ == 1 && a_ == 0) {
    last_ = 0;  // first element
    return Rational(0);
  }
  if (!advance()) return std::nullopt;
  last_ = make_rational(a_, b_);
  pending_negative_ = last_ != 0;
  return last_;
}

std::vector<Rational> rationals_up_to(const Integer& T) {
  RationalStream s(T);
  std::vector<Rational> out;
  while (auto q = s.next()) out.push_back(*q);
  return out;
}

bool stream_less(const Rational& x, const Rational& y) {
  auto key = [](const Rational& q) {
    return std::make_tuple(height_rat(q), Integer(abs(q.get_num())), Integer(q.get_den()), q < 0);
  };
  return key(x) < key(y);
}

namespace {

bool point_less(const QPoint& a, const QPoint& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (stream_less(a[i], b[i])) return true;
    if (stream_less(b[i], a[i])) return false;
  }
  return false;
}

bool power_graph_member(const QPoint& p) {
  if (p.size() != 3) return false;
  const Rational &a = p[0], &b = p[1], &c = p[2];
  if (!(1 < a && a < 2 && 1 < b && b < 2)) return false;
  const unsigned long q = to_ulong(b.get_den(), "exponent denominator");
  const unsigned long e = to_ulong(b.get_num(), "exponent numerator");
  Integer rn, rd;
  if (!exact_root(a.get_num(), q, rn) || !exact_root(a.get_den(), q, rd)) return false;
  return c == rpow(make_rational(rn, rd), e);
}

}  // namespace

MembershipPredicate MembershipPredicate::polynomial_system(unsigned n, std::vector<Constraint> constraints) {
  MembershipPredicate p;
  p.kind_ = Kind::PolynomialSystem;
  p.n_ = n;
  for (const auto& c : constraints)
    if (c.poly.nvars() != n) throw Error("constraint arity differs from predicate arity");
  p.constraints_ = std::move(constraints);
  p.name_ = "polynomial system";
  return p;
}

MembershipPredicate MembershipPredicate::power_graph() {
  MembershipPredicate p;
  p.kind_ = Kind::PowerGraph;
  p.n_ = 3;
  p.name_ = "power-graph";
  return p;
}

MembershipPredicate MembershipPredicate::custom(unsigned n, std::string name, std::function<bool(const QPoint&)> test) {
  MembershipPredicate p;
  p.kind_ = Kind::Custom;
  p.n_ = n;
  p.name_ = std::move(name);
  p.test_ = std::move(test);
  return p;
}

MembershipPredicate& MembershipPredicate::with_solver(GraphSolver solver) {
  for (auto i : solver.free)
    if (i >= n_) throw Error("solver free coordinate out of range");
  solver_ = std::move(solver);
  return *this;
}

bool MembershipPredicate::operator()(const QPoint& p) const {
  if (p.size() != n_) throw Error("point arity differs from predicate arity");
  switch (kind_) {
    case Kind::PowerGraph:
      return power_graph_member(p);
    case Kind::Custom:
      return test_(p);
    case Kind::PolynomialSystem:
      for (const auto& c : constraints_) {
        const Rational v = c.poly(p);
        if (c.rel == Constraint::Rel::Eq && v != 0) return false;
        if (c.rel == Constraint::Rel::Gt && !(v > 0)) return false;
        if (c.rel == Constraint::Rel::Lt && !(v < 0)) return false;
      }
      return true;
  }
  return false;
}

PointStream::PointStream(const MembershipPredicate& pred, const Integer& T)
    : pred_(pred), pool_(rationals_up_to(T)), idx_(pred.arity(), 0) {
  done_ = pred.arity() == 0;
}

std::optional<QPoint> PointStream::next() {
  while (!done_) {
    QPoint p(idx_.size());
    for (std::size_t i = 0; i < idx_.size(); ++i) p[i] = pool_[idx_[i]];
    std::size_t pos = idx_.size();
    while (pos > 0) {
      --pos;
      if (++idx_[pos] < pool_.size()) break;
      idx_[pos] = 0;
      if (pos == 0) done_ = true;
    }
    if (pred_(p)) return p;
  }
  return std::nullopt;
}

std::vector<QPoint> set_points(const MembershipPredicate& pred, const Integer& T) {
  std::vector<QPoint> out;
  if (pred.kind() == MembershipPredicate::Kind::PowerGraph) return power_curve_points(T);
  if (pred.solver()) {
    const auto& solver = *pred.solver();
    const auto pool = rationals_up_to(T);
    const std::size_t s = solver.free.size();
    std::vector<std::size_t> idx(s, 0);
    while (true) {
      QPoint free(s);
      for (std::size_t i = 0; i < s; ++i) free[i] = pool[idx[i]];
      if (auto p = solver.solve(free)) {
        if (p->size() != pred.arity()) throw Error("solver returned a point of wrong arity");
        for (std::size_t i = 0; i < s; ++i)
          if ((*p)[solver.free[i]] != free[i]) throw Error("solver changed a free coordinate");
        if (height_point(*p) <= T && pred(*p)) out.push_back(std::move(*p));
      }
      std::size_t pos = 0;
      while (pos < s && ++idx[pos] == pool.size()) idx[pos++] = 0;
      if (pos == s) break;
    }
    std::sort(out.begin(), out.end(), point_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  PointStream stream(pred, T);
  while (auto p = stream.next()) out.push_back(std::move(*p));
  return out;
}

std::vector<QPoint> power_curve_points(const Integer& T) {
  if (T < 1) throw Error("height bound must be >= 1");
  std::vector<QPoint> out;
  // b = p/q with q < p < 2q; s = u/v > 1 with s^q < 2; a = s^q, c = s^p.
  // H(c) = u^p is the largest of the three heights.
  for (unsigned long q = 2;; ++q) {
    const unsigned long p0 = q + 1;
    if (Integer(p0) > T || ipow(Integer(2), p0) > T) break;
    for (unsigned long p = q + 1; p < 2 * q; ++p) {
      if (gcd(Integer(p), Integer(q)) != 1) continue;
      const Rational b = make_rational(p, q);
      if (height_rat(b) > T) continue;
      for (Integer u = 2; ipow(u, p) <= T; ++u)
        for (Integer v = 1; v < u; ++v) {
          if (gcd(u, v) != 1) continue;
          const Rational s = make_rational(u, v);
          const Rational a = rpow(s, q);
          if (!(a < 2)) continue;
          out.push_back({a, b, rpow(s, p)});
        }
    }
  }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

namespace {

class ExprParser {
 public:
  ExprParser(const std::string& text, unsigned n) : s_(text), n_(n) {}

  MPoly parse() {
    MPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

  // Highest variable index seen, to infer arity.
  static unsigned max_var(const std::string& text) {
    unsigned best = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      int idx = letter_index(text[i]);
      if (idx < 0) continue;
      if (text[i] == 'x' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        std::size_t j = i + 1;
        unsigned v = 0;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) v = v * 10 + (text[j++] - '0');
        best = std::max(best, v);
        i = j - 1;
      } else {
        best = std::max(best, static_cast<unsigned>(idx) + 1);
      }
    }
    return best;
  }

 private:
  static int letter_index(char c) {
    switch (c) {
      case 'x': return 0;
      case 'y': return 1;
      case 'z': return 2;
      case 'w': return 3;
      default: return -1;
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("predicate parse error at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || letter_index(c) >= 0;
  }

  MPoly expr() {
    MPoly acc = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  MPoly term() {
    MPoly acc = unary();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * unary();
      } else if (peek('/')) {
        ++pos_;
        MPoly d = unary();
        if (d.total_degree() != 0 || d.is_zero()) fail("division only by nonzero constants");
        acc = (1 / d.terms().begin()->second) * acc;
      } else if (starts_factor()) {
        acc = acc * unary();
      } else {
        return acc;
      }
    }
  }

  MPoly unary() {
    if (peek('-')) {
      ++pos_;
      return Rational(-1) * unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    MPoly b = base();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a natural number");
      b = pow(b, static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return b;
  }

  MPoly base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly p = expr();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Integer z(s_.substr(start, pos_ - start));
      return MPoly::constant(n_, Rational(z));
    }
    const int li = letter_index(c);
    if (li < 0) fail("unexpected '" + std::string(1, c) + "'");
    ++pos_;
    unsigned idx = static_cast<unsigned>(li);
    if (c == 'x' && pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      idx = static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
      if (idx == 0) fail("variables are numbered from x1");
      --idx;
    }
    if (idx >= n_) fail("variable index exceeds arity " + std::to_string(n_));
    return MPoly::var(n_, idx);
  }

  const std::string& s_;
  unsigned n_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_mpoly(const std::string& text, unsigned n) { return ExprParser(text, n).parse(); }

MembershipPredicate parse_predicate(const std::string& text, unsigned n) {
  const auto pieces = split(text, ';');
  if (pieces.size() == 1 && pieces[0] == "power-graph") return MembershipPredicate::power_graph();
  if (n == 0) n = ExprParser::max_var(text);
  if (n == 0) throw Error("predicate mentions no variables; pass the arity explicitly");
  std::vector<Constraint> cs;
  for (const auto& piece : pieces) {
    if (piece.empty()) continue;
    const auto at = piece.find_first_of("=<>");
    if (at == std::string::npos) throw Error("constraint lacks '=', '<' or '>': " + piece);
    Constraint c;
    c.rel = piece[at] == '=' ? Constraint::Rel::Eq : piece[at] == '>' ? Constraint::Rel::Gt : Constraint::Rel::Lt;
    std::string rhs = piece.substr(at + 1);
    if (!rhs.empty() && rhs[0] == '=') throw Error("only '=', '<' and '>' are supported: " + piece);
    c.poly = parse_mpoly(piece.substr(0, at), n) - parse_mpoly(rhs, n);
    cs.push_back(std::move(c));
  }
  auto p = MembershipPredicate::polynomial_system(n, std::move(cs));
  return p;
}

std::vector<NFElement> project_lambda(const std::vector<LambdaEntry>& lambda,
                                      const std::vector<std::vector<Rational>>& a) {
  std::shared_ptr<const AlgNumber> field;
  for (const auto& l : lambda) {
    if (!std::holds_alternative<AlgNumber>(l)) continue;
    const auto& alg = std::get<AlgNumber>(l);
    if (!field) field = std::make_shared<AlgNumber>(alg);
    else if (!field->same_number(alg))
      throw Error("lambda mixes incompatible algebraic numbers " + field->to_string() + " and " + alg.to_string());
  }
  if (!field) field = std::make_shared<AlgNumber>(AlgNumber::rational(0));
  std::vector<NFElement> lam;
  for (const auto& l : lambda)
    lam.push_back(std::holds_alternative<Rational>(l) ? NFElement::constant(field, std::get<Rational>(l))
                                                      : NFElement::generator(field));
  std::vector<NFElement> out;
  for (const auto& ai : a) {
    if (ai.size() != lam.size()) throw Error("a_i length differs from lambda length");
    NFElement acc = NFElement::constant(field, 0);
    for (std::size_t j = 0; j < ai.size(); ++j) acc = acc + ai[j] * lam[j];
    out.push_back(acc);
  }
  return out;
}

std::vector<Rational> project_lambda(const std::vector<Rational>& lambda,
                                     const std::vector<std::vector<Rational>>& a) {
  std::vector<Rational> out;
  for (const auto& ai : a) {
    if (ai.size() != lambda.size()) throw Error("a_i length differs from lambda length");
    Rational acc = 0;
    for (std::size_t j = 0; j < ai.size(); ++j) acc += ai[j] * lambda[j];
    out.push_back(acc);
  }
  return out;
}

std::string format_point(const QPoint& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
  return s;
}

QPoint parse_point(const std::string& text) {
  QPoint p;
  for (const auto& f : split(text, ',')) p.push_back(parse_rational(f));
  return p;
}

}  // namespace ratcover
