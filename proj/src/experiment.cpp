#include "ratcover/experiment.hpp"

#include "ratcover/algebraic.hpp"

#include <iomanip>
#include <memory>
#include <sstream>

namespace ratcover {

namespace {

bool within(const Rational& x, const Rational& lo, const Rational& hi) { return lo <= x && x <= hi; }

// Exact square root of a nonnegative rational, if it is a square.
std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  Integer a, b;
  if (!exact_root(q.get_num(), 2, a) || !exact_root(q.get_den(), 2, b)) return std::nullopt;
  return make_rational(a, b);
}

// (2t - 1) / s on the given variable.
MPoly centered(unsigned nvars, unsigned i, long s) {
  return make_rational(2, s) * MPoly::var(nvars, i) - MPoly::constant(nvars, make_rational(1, s));
}

MPoly scaled(unsigned nvars, unsigned i, const Rational& s) { return s * MPoly::var(nvars, i); }

BuiltinSet parabola() {
  BuiltinSet s;
  s.name = "parabola";
  s.description = "y = x^2 for |x| <= 1/3, chart x = (2t-1)/3";
  const MPoly x = centered(1, 0, 3);
  s.chart = StrongParam{s.name, 1, 2, {RatFuncM::polynomial(x), RatFuncM::polynomial(x * x)},
                        [](const QPoint& p) -> std::optional<QPoint> { return QPoint{(3 * p[0] + 1) / 2}; },
                        std::nullopt};
  const Rational third = make_rational(1, 3);
  s.predicate = MembershipPredicate::custom(2, s.name, [third](const QPoint& p) {
                  return p[1] == p[0] * p[0] && within(p[0], -third, third);
                }).with_solver({{0}, [third](const QPoint& f) -> std::optional<QPoint> {
                                  if (!within(f[0], -third, third)) return std::nullopt;
                                  return QPoint{f[0], f[0] * f[0]};
                                }});
  return s;
}

// u = (1 + 4t)/16 keeps the arc away from x = 1, where a bound of 1 on
// |x| would be tight and no interval proof could close.
BuiltinSet circle_arc() {
  BuiltinSet s;
  s.name = "circle-arc";
  s.description = "x^2 + y^2 = 1 with 231/281 <= x <= 255/257, y > 0, chart u = (1+4t)/16, x = (1-u^2)/(1+u^2), y = 2u/(1+u^2)";
  const MPoly w = Rational(4) * MPoly::var(1, 0) + MPoly::constant(1, 1);  // 16u
  const MPoly c256 = MPoly::constant(1, 256);
  const MPoly den = c256 + w * w;
  s.chart = StrongParam{s.name,
                        1,
                        2,
                        {RatFuncM::quotient(c256 - w * w, den), RatFuncM::quotient(Rational(32) * w, den)},
                        [](const QPoint& p) -> std::optional<QPoint> {
                          if (p[0] == -1) return std::nullopt;
                          const Rational u = p[1] / (1 + p[0]);
                          return QPoint{(16 * u - 1) / 4};
                        },
                        std::nullopt};
  const Rational lo = make_rational(231, 281), hi = make_rational(255, 257);
  s.predicate = MembershipPredicate::custom(2, s.name, [lo, hi](const QPoint& p) {
                  return p[0] * p[0] + p[1] * p[1] == 1 && p[1] > 0 && within(p[0], lo, hi);
                }).with_solver({{0}, [lo, hi](const QPoint& f) -> std::optional<QPoint> {
                                  if (!within(f[0], lo, hi)) return std::nullopt;
                                  auto y = rational_sqrt(1 - f[0] * f[0]);
                                  if (!y) return std::nullopt;
                                  return QPoint{f[0], *y};
                                }});
  return s;
}

BuiltinSet cubic() {
  BuiltinSet s;
  s.name = "cubic";
  s.description = "y = x^3 for 0 <= x <= 1/2, chart x = t/2";
  const MPoly x = scaled(1, 0, make_rational(1, 2));
  s.chart = StrongParam{s.name, 1, 2, {RatFuncM::polynomial(x), RatFuncM::polynomial(x * x * x)},
                        [](const QPoint& p) -> std::optional<QPoint> { return QPoint{2 * p[0]}; }, std::nullopt};
  const Rational half = make_rational(1, 2);
  s.predicate = MembershipPredicate::custom(2, s.name, [half](const QPoint& p) {
                  return p[1] == p[0] * p[0] * p[0] && within(p[0], 0, half);
                }).with_solver({{0}, [half](const QPoint& f) -> std::optional<QPoint> {
                                  if (!within(f[0], 0, half)) return std::nullopt;
                                  return QPoint{f[0], f[0] * f[0] * f[0]};
                                }});
  return s;
}

BuiltinSet affine() {
  BuiltinSet s;
  s.name = "affine";
  s.description = "3y = 2x for 0 <= x <= 1/2, chart (t/2, t/3)";
  s.chart = StrongParam{s.name,
                        1,
                        2,
                        {RatFuncM::polynomial(scaled(1, 0, make_rational(1, 2))),
                         RatFuncM::polynomial(scaled(1, 0, make_rational(1, 3)))},
                        [](const QPoint& p) -> std::optional<QPoint> { return QPoint{2 * p[0]}; },
                        std::nullopt};
  const Rational half = make_rational(1, 2);
  s.predicate = MembershipPredicate::custom(2, s.name, [half](const QPoint& p) {
                  return 3 * p[1] == 2 * p[0] && within(p[0], 0, half);
                }).with_solver({{0}, [half](const QPoint& f) -> std::optional<QPoint> {
                                  if (!within(f[0], 0, half)) return std::nullopt;
                                  return QPoint{f[0], 2 * f[0] / 3};
                                }});
  return s;
}

// Pairs a_1 = (x1, x2), a_2 = (x3, x4) with a_2 = (2 x2, x1): under
// lambda = (1, sqrt 2) these land on the line y = sqrt(2) x.
BuiltinSet lambda_line() {
  BuiltinSet s;
  s.name = "lambda-line";
  s.description = "(a1, a2, 2 a2, a1) for |a1|, |a2| <= 1/4, chart a_i = (2 t_i - 1)/4";
  s.default_e = 1;
  const MPoly a1 = centered(2, 0, 4);
  const MPoly a2 = centered(2, 1, 4);
  s.chart = StrongParam{s.name,
                        2,
                        4,
                        {RatFuncM::polynomial(a1), RatFuncM::polynomial(a2), RatFuncM::polynomial(Rational(2) * a2),
                         RatFuncM::polynomial(a1)},
                        [](const QPoint& p) -> std::optional<QPoint> {
                          return QPoint{(4 * p[0] + 1) / 2, (4 * p[1] + 1) / 2};
                        },
                        std::nullopt};
  const Rational q = make_rational(1, 4);
  s.predicate = MembershipPredicate::custom(4, s.name, [q](const QPoint& p) {
                  return p[2] == 2 * p[1] && p[3] == p[0] && within(p[0], -q, q) && within(p[1], -q, q);
                }).with_solver({{0, 1}, [q](const QPoint& f) -> std::optional<QPoint> {
                                  if (!within(f[0], -q, q) || !within(f[1], -q, q)) return std::nullopt;
                                  return QPoint{f[0], f[1], 2 * f[1], f[0]};
                                }});
  return s;
}

BuiltinSet powers_ab() {
  BuiltinSet s;
  s.name = "powers-ab";
  s.description = "(a, b, a^b) for 1 < a, b < 2";
  s.default_e = 1;
  s.predicate = MembershipPredicate::power_graph();
  return s;
}

// c^q == a^p for b = p/q.
bool on_rational_fibre(const QPoint& p) {
  const Rational& b = p[1];
  const unsigned long num = to_ulong(b.get_num(), "exponent numerator");
  const unsigned long den = to_ulong(b.get_den(), "exponent denominator");
  return rpow(p[2], den) == rpow(p[0], num);
}

std::size_t lambda_misses(const std::vector<QPoint>& pts) {
  auto sqrt2 = AlgNumber(UPoly::from_integers({-2, 0, 1}), 1, 2);
  const std::vector<LambdaEntry> lambda{Rational(1), sqrt2};
  const auto field = std::make_shared<const AlgNumber>(sqrt2);
  const NFElement g = NFElement::generator(field);
  std::size_t misses = 0;
  for (const auto& p : pts) {
    const auto y = project_lambda(lambda, {{p[0], p[1]}, {p[2], p[3]}});
    if (!(y[1] == g * y[0])) ++misses;
  }
  return misses;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"parabola", "circle-arc", "cubic", "affine", "lambda-line", "powers-ab"};
}

BuiltinSet builtin(const std::string& name) {
  if (name == "parabola") return parabola();
  if (name == "circle-arc") return circle_arc();
  if (name == "cubic") return cubic();
  if (name == "affine") return affine();
  if (name == "lambda-line") return lambda_line();
  if (name == "powers-ab") return powers_ab();
  throw Error("unknown built-in set '" + name + "'");
}

StrongParam certified_chart(const BuiltinSet& set, unsigned e) {
  if (!set.chart) throw Error("set '" + set.name + "' has no chart");
  StrongParam p = *set.chart;
  const ExponentProfile prof = profile(p.m, p.n, e, JMode::Bound);
  p.certificate = certify(p, prof.k, 1);
  return p;
}

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
  const BuiltinSet set = builtin(spec.name);
  const unsigned e = spec.e == 0 ? set.default_e : spec.e;
  std::optional<StrongParam> chart;
  if (set.chart) chart = certified_chart(set, e);
  std::vector<ExperimentRow> rows;
  for (const auto& T : spec.heights) {
    ExperimentRow row;
    row.T = T;
    const auto pts = set_points(set.predicate, T);
    row.points = pts.size();
    if (set.name == "powers-ab") {
      std::size_t off = 0;
      for (const auto& p : pts)
        if (!on_rational_fibre(p)) ++off;
      row.transcendental = off;
    }
    if (set.name == "lambda-line") row.off_target = lambda_misses(pts);
    if (chart) {
      const CoverCertificate cert = cover_points(*chart, e, T, pts, spec.mode);
      row.hypersurfaces = cert.hypersurfaces.size();
      row.bound = cert.params.count_bound;
      row.violations = cert.violations.size();
      for (const auto& h : cert.hypersurfaces) row.hypersurface_lines.push_back(h.serialize());
      row.certificate = serialize_certificate(cert);
      row.preimages = serialize_preimages(cert);
      const VerifyResult v = verify_certificate(row.certificate, row.preimages);
      row.verified = v.ok;
      row.verify_message = v.message;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_experiment_table(const ExperimentSpec& spec, const std::vector<ExperimentRow>& rows) {
  const BuiltinSet set = builtin(spec.name);
  const unsigned e = spec.e == 0 ? set.default_e : spec.e;
  std::ostringstream os;
  os << "# " << set.name << ": " << set.description << "; e=" << e << '\n';
  os << std::left << std::setw(8) << "T" << std::setw(10) << "|X(Q,T)|" << std::setw(15) << "hypersurfaces"
     << std::setw(22) << "bound" << "verified";
  const bool tr = !rows.empty() && rows.front().transcendental.has_value();
  const bool lam = !rows.empty() && rows.front().off_target.has_value();
  if (tr) os << "  N(X^tr,T)";
  if (lam) os << "  off-line";
  os << '\n';
  for (const auto& r : rows) {
    os << std::setw(8) << r.T.get_str() << std::setw(10) << r.points << std::setw(15)
       << (r.hypersurfaces ? std::to_string(*r.hypersurfaces) : "-") << std::setw(22)
       << (r.bound ? r.bound->get_str() : "-");
    os << (r.verified ? (*r.verified ? "yes" : "NO") : "-");
    if (tr) os << "  " << *r.transcendental;
    if (lam) os << "  " << *r.off_target;
    os << '\n';
  }
  return os.str();
}

}  // namespace ratcover
