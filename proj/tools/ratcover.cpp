// ratcover: command-line front-end.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 internal invariant violation (printed with a THEORY-VIOLATION flag).

#include "ratcover/algebraic.hpp"
#include "ratcover/certificate.hpp"
#include "ratcover/cover.hpp"
#include "ratcover/enumerate.hpp"
#include "ratcover/experiment.hpp"
#include "ratcover/exponents.hpp"
#include "ratcover/heights.hpp"
#include "ratcover/linalg.hpp"
#include "ratcover/parametrize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace ratcover;

namespace {

constexpr int kOk = 0, kVerifyFailed = 1, kUsage = 2, kViolation = 3;

struct InvariantViolation : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) std::cout << text;
  else write_file(out, text);
}

Integer parse_height(const std::string& s) {
  Integer T;
  if (T.set_str(s, 10) != 0 || T < 1) throw Error("height bound must be a positive integer, got '" + s + "'");
  return T;
}

JMode j_mode(bool exact, bool bound) {
  if (exact && bound) throw Error("--exact-J and --bound-J are exclusive");
  return exact ? JMode::Exact : bound ? JMode::Bound : JMode::Auto;
}

std::string decimal(const Rational& q, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << to_double(q);
  return os.str();
}

int cmd_exponents(unsigned m, unsigned n, unsigned e, JMode mode) {
  const ExponentProfile p = profile(m, n, e, mode);
  std::cout << "m=" << p.m << " n=" << p.n << " e=" << p.e << " D=" << p.D << " b=" << p.b << " k=" << p.k
            << " B=" << p.B.get_str() << " eps=" << to_string(p.epsilon) << " (" << decimal(p.epsilon) << ")"
            << " #J=" << p.J_count.get_str() << (p.J_exact ? " (exact)" : " (bound)") << " K=" << p.K.get_str()
            << '\n';
  return kOk;
}

int cmd_height(const std::vector<std::string>& values, unsigned d) {
  for (const auto& v : values) {
    if (v.starts_with("poly:")) {
      const AlgNumber a = AlgNumber::parse(v);
      std::cout << v << "  deg=" << a.degree();
      for (unsigned j = d ? d : a.degree(); j <= (d ? d : a.degree()); ++j) {
        const auto h = height_poly_d(a, j);
        std::cout << "  H_poly_" << j << '=' << (h ? h->height.get_str() : "undefined");
      }
      std::cout << '\n';
    } else if (v.find(',') != std::string::npos) {
      std::cout << v << "  H=" << height_point(parse_point(v)).get_str() << '\n';
    } else {
      const Rational q = parse_rational(v);
      std::cout << v << "  H=" << height_rat(q).get_str();
      if (d) std::cout << "  H_poly_" << d << '=' << height_poly_d(q, d)->height.get_str();
      std::cout << '\n';
    }
  }
  return kOk;
}

MembershipPredicate predicate_for(const std::string& pred, const std::string& set) {
  if (!set.empty()) return builtin(set).predicate;
  if (pred.empty()) throw Error("give --pred or --set");
  return parse_predicate(pred);
}

int cmd_enumerate(const std::string& pred, const std::string& set, const std::string& T, const std::string& out,
                  bool count_only) {
  const auto pts = set_points(predicate_for(pred, set), parse_height(T));
  std::ostringstream os;
  if (count_only) os << pts.size() << '\n';
  else
    for (const auto& p : pts) os << format_point(p) << '\n';
  emit(out, os.str());
  return kOk;
}

std::vector<QPoint> read_points(const std::string& path) {
  std::vector<QPoint> pts;
  std::istringstream is(read_file(path));
  std::string line;
  while (std::getline(is, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) pts.push_back(parse_point(line));
  return pts;
}

int cmd_fit(unsigned n, unsigned e, const std::string& in) {
  const auto pts = read_points(in);
  for (const auto& p : pts)
    if (p.size() != n) throw Error("point " + format_point(p) + " does not have " + std::to_string(n) + " coordinates");
  const auto h = fit_hypersurface(pts, n, e);
  if (!h) {
    std::cout << "no hypersurface of degree " << e << " contains all " << pts.size() << " points\n";
    return kVerifyFailed;
  }
  std::cout << h->serialize() << '\n';
  return kOk;
}

void check_cover(const CoverCertificate& c) {
  if (!c.violations.empty())
    throw InvariantViolation("THEORY-VIOLATION: " + std::to_string(c.violations.size()) +
                             " box(es) without a fitting hypersurface, first box" + std::to_string(c.violations.front()));
  if (Integer(c.hypersurfaces.size()) > c.params.count_bound)
    throw InvariantViolation("THEORY-VIOLATION: " + std::to_string(c.hypersurfaces.size()) +
                             " hypersurfaces exceed the bound " + c.params.count_bound.get_str());
}

int cmd_cover(const std::string& set_name, unsigned e, const std::string& T_text, JMode mode, const std::string& out) {
  const BuiltinSet set = builtin(set_name);
  if (!set.chart) throw Error("set '" + set_name + "' has no chart to cover with");
  if (e == 0) e = set.default_e;
  const Integer T = parse_height(T_text);
  const StrongParam chart = certified_chart(set, e);
  const CoverCertificate cert = cover_points(chart, e, T, set_points(set.predicate, T), mode);
  check_cover(cert);
  if (out.empty()) {
    std::cout << serialize_certificate(cert);
  } else {
    write_file(out, serialize_certificate(cert));
    write_file(out + ".points", serialize_preimages(cert));
    std::cerr << "wrote " << out << " and " << out << ".points (" << cert.hypersurfaces.size()
              << " hypersurfaces, bound " << cert.params.count_bound.get_str() << ")\n";
  }
  return kOk;
}

int cmd_verify(const std::string& cert, std::string points) {
  if (points.empty()) points = cert + ".points";
  const VerifyResult r = verify_certificate(read_file(cert), read_file(points));
  std::cout << (r.ok ? "OK: " : "FAIL: ") << r.message << '\n';
  return r.ok ? kOk : kVerifyFailed;
}

int cmd_reparam(const std::string& num, const std::string& den, const std::string& lo, const std::string& hi, unsigned k,
                const std::string& out) {
  RatFunc1 f;
  f.num = parse_upoly(num);
  if (!den.empty()) f.den = parse_upoly(den);
  f.lo = parse_rational(lo);
  f.hi = parse_rational(hi);
  const Reparametrization r = reparametrize_univariate(f, k);
  if (!covers_domain(r)) throw InvariantViolation("THEORY-VIOLATION: pieces do not cover the domain");
  std::ostringstream os;
  write_reparametrization(os, r);
  emit(out, os.str());
  return kOk;
}

std::vector<Integer> parse_heights(const std::vector<std::string>& Ts) {
  std::vector<Integer> out;
  for (const auto& t : Ts) out.push_back(parse_height(t));
  return out;
}

int cmd_experiment(const std::string& set, unsigned e, const std::vector<std::string>& Ts, JMode mode,
                   const std::string& out, const std::string& json_path, const std::string& cert_dir) {
  ExperimentSpec spec{set, e, parse_heights(Ts), mode};
  const auto rows = run_experiment(spec);
  emit(out, format_experiment_table(spec, rows));
  nlohmann::json dump;
  dump["set"] = set;
  dump["e"] = spec.e == 0 ? builtin(set).default_e : spec.e;
  int status = kOk;
  for (const auto& r : rows) {
    nlohmann::json row{{"T", r.T.get_str()}, {"points", r.points}};
    if (r.hypersurfaces) row["hypersurfaces"] = *r.hypersurfaces;
    if (r.bound) row["bound"] = r.bound->get_str();
    if (r.verified) row["verified"] = *r.verified;
    if (r.transcendental) row["transcendental"] = *r.transcendental;
    if (r.off_target) row["off_target"] = *r.off_target;
    row["hypersurface_lines"] = r.hypersurface_lines;
    dump["rows"].push_back(row);
    if (!cert_dir.empty() && !r.certificate.empty()) {
      const std::string base = cert_dir + "/" + set + "_T" + r.T.get_str() + ".cert";
      write_file(base, r.certificate);
      write_file(base + ".points", r.preimages);
    }
    if (r.violations > 0 || (r.hypersurfaces && r.bound && Integer(*r.hypersurfaces) > *r.bound) ||
        r.transcendental.value_or(0) > 0 || r.off_target.value_or(0) > 0) {
      std::cerr << "THEORY-VIOLATION at T=" << r.T.get_str() << '\n';
      status = kViolation;
    } else if (r.verified && !*r.verified && status == kOk) {
      std::cerr << "verification failed at T=" << r.T.get_str() << ": " << r.verify_message << '\n';
      status = kVerifyFailed;
    }
  }
  if (!json_path.empty()) write_file(json_path, dump.dump(2) + "\n");
  return status;
}

int cmd_cluster(const std::string& set_name, unsigned e, const std::string& r, unsigned trials, std::uint64_t seed,
                JMode mode) {
  const BuiltinSet set = builtin(set_name);
  if (e == 0) e = set.default_e;
  const ClusterReport rep = cluster_determinant_check(certified_chart(set, e), e, parse_rational(r), trials, seed, mode);
  std::cout << "trials=" << rep.trials << " failures=" << rep.failures << " bound=K*r^B=" << to_string(rep.bound)
            << " max|det|=" << to_string(rep.max_abs_det) << " ratio=" << decimal(rep.max_ratio, 12) << '\n';
  return rep.failures == 0 ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational points of bounded height: enumeration, determinant-method covers and certificates"};
  app.require_subcommand(1);

  unsigned m = 1, n = 2, e = 0, k = 3, d = 0, trials = 100;
  std::string T = "10", pred, set, out, in, cert, points, num, den, lo = "0", hi = "1", json, cert_dir, r = "1/4";
  std::vector<std::string> Ts, values;
  bool exact_J = false, bound_J = false, count_only = false;
  std::uint64_t seed = 1;

  auto add_J = [&](CLI::App* c) {
    c->add_flag("--exact-J", exact_J, "Count #J exactly");
    c->add_flag("--bound-J", bound_J, "Use the bound (b+2)^D for #J");
  };

  auto* exps = app.add_subcommand("exponents", "Print D, b, k, B, eps, #J and K for (m, n, e)");
  exps->add_option("--m", m)->required();
  exps->add_option("--n", n)->required();
  exps->add_option("--e", e)->required();
  add_J(exps);

  auto* height = app.add_subcommand("height", "Heights of rationals (p/q), points (comma-joined) or algebraic numbers");
  height->add_option("values", values, "p/q, x1,...,xn or poly:c0,...,ck;interval:lo,hi")->required();
  height->add_option("--d", d, "Degree for the polynomial height (default: degree of the number)");

  auto* enumerate = app.add_subcommand("enumerate", "List X(Q,T) for a predicate or built-in set");
  enumerate->add_option("--pred", pred, "e.g. \"x^2+y^2-1=0; y>0\" or power-graph");
  enumerate->add_option("--set", set, "Built-in set name");
  enumerate->add_option("--height,-T", T);
  enumerate->add_option("--out", out);
  enumerate->add_flag("--count", count_only, "Print only the number of points");

  auto* fit = app.add_subcommand("fit", "Fit a degree-e hypersurface through the points in a file");
  fit->add_option("--n", n)->required();
  fit->add_option("--e", e)->required();
  fit->add_option("--in", in, "One comma-joined point per line")->required();

  auto* cover = app.add_subcommand("cover", "Cover X(Q,T) of a built-in set and write a certificate");
  cover->add_option("--set", set)->required();
  cover->add_option("--e", e);
  cover->add_option("--height,-T", T);
  cover->add_option("--out", out, "Certificate path; the point list goes to <out>.points");
  add_J(cover);

  auto* verify = app.add_subcommand("verify", "Replay a certificate with exact arithmetic");
  verify->add_option("certificate", cert)->required();
  verify->add_option("--points", points, "Point list (default <certificate>.points)");

  auto* reparam = app.add_subcommand("reparam", "Reparametrize a univariate rational function with bounded derivatives");
  reparam->add_option("--num", num, "Numerator coefficients c0,c1,... ascending")->required();
  reparam->add_option("--den", den, "Denominator coefficients (default 1)");
  reparam->add_option("--lo", lo);
  reparam->add_option("--hi", hi);
  reparam->add_option("--k", k);
  reparam->add_option("--out", out);

  auto* experiment = app.add_subcommand("experiment", "Enumerate, cover and verify a built-in set over several T");
  experiment->add_option("--set", set)->required()->check(CLI::IsMember(builtin_names()));
  experiment->add_option("--e", e);
  experiment->add_option("--height,-T", Ts)->required();
  experiment->add_option("--out", out, "Table path (default stdout)");
  experiment->add_option("--json", json, "Structured dump path");
  experiment->add_option("--cert-dir", cert_dir, "Directory for per-T certificates");
  add_J(experiment);

  auto* cluster = app.add_subcommand("cluster", "Compare cluster determinants with K r^B");
  cluster->add_option("--set", set)->required();
  cluster->add_option("--e", e);
  cluster->add_option("--r", r);
  cluster->add_option("--trials", trials);
  cluster->add_option("--seed", seed);
  add_J(cluster);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*exps) return cmd_exponents(m, n, e, j_mode(exact_J, bound_J));
    if (*height) return cmd_height(values, d);
    if (*enumerate) return cmd_enumerate(pred, set, T, out, count_only);
    if (*fit) return cmd_fit(n, e, in);
    if (*cover) return cmd_cover(set, e, T, j_mode(exact_J, bound_J), out);
    if (*verify) return cmd_verify(cert, points);
    if (*reparam) return cmd_reparam(num, den, lo, hi, k, out);
    if (*experiment) return cmd_experiment(set, e, Ts, j_mode(exact_J, bound_J), out, json, cert_dir);
    if (*cluster) return cmd_cluster(set, e, r, trials, seed, j_mode(exact_J, bound_J));
  } catch (const InvariantViolation& err) {
    std::cerr << err.what() << '\n';
    return kViolation;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
