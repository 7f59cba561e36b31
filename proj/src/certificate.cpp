#include "ratcover/certificate.hpp"

#include "ratcover/enumerate.hpp"
#include "ratcover/heights.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ratcover {

std::string serialize_certificate(const CoverCertificate& cert) {
  const auto& P = cert.params;
  const auto& pr = P.profile;
  std::ostringstream os;
  os << pr.m << ' ' << pr.n << ' ' << pr.e << ' ' << P.T.get_str() << "; K=" << to_string(Rational(pr.K))
     << "; B=" << pr.B.get_str() << "; eps=" << to_string(pr.epsilon) << "; r=" << to_string(P.r) << '\n';
  for (const auto& h : cert.hypersurfaces) os << h.serialize() << '\n';
  for (std::size_t i = 0; i < cert.points.size(); ++i) {
    os << format_point(cert.points[i]) << " -> ";
    if (cert.assignment[i] < 0) os << "unassigned";
    else os << 'h' << cert.assignment[i];
    os << " @ box" << cert.box[i] << '\n';
  }
  return os.str();
}

std::string serialize_preimages(const CoverCertificate& cert) {
  std::ostringstream os;
  for (std::size_t i = 0; i < cert.points.size(); ++i)
    os << format_point(cert.points[i]) << " @ " << format_point(cert.preimages[i]) << '\n';
  return os.str();
}

namespace {

std::string field(const std::string& part, const std::string& key, unsigned lineno) {
  const auto t = split(part, ';');
  const std::string prefix = key + "=";
  if (t.size() != 1 || !t[0].starts_with(prefix))
    throw Error("line " + std::to_string(lineno) + ": expected " + prefix + "<value>");
  return t[0].substr(prefix.size());
}

unsigned long parse_index(const std::string& s, const std::string& prefix, unsigned lineno) {
  if (!s.starts_with(prefix) || s.size() == prefix.size())
    throw Error("line " + std::to_string(lineno) + ": expected " + prefix + "<index>, got '" + s + "'");
  const std::string digits = s.substr(prefix.size());
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw Error("line " + std::to_string(lineno) + ": bad index '" + s + "'");
  return std::stoul(digits);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

}  // namespace

ParsedCertificate parse_certificate(const std::string& text) {
  ParsedCertificate c;
  std::istringstream is(text);
  std::string line;
  unsigned lineno = 0;
  bool header = false;
  bool in_points = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      if (!header) {
        const auto parts = split(line, ';');
        if (parts.size() != 5) throw Error("header needs 5 ';'-separated fields");
        std::istringstream hs(parts[0]);
        std::string Ttok;
        if (!(hs >> c.m >> c.n >> c.e >> Ttok)) throw Error("header must start with 'm n e T'");
        if (c.T.set_str(Ttok, 10) != 0) throw Error("bad height bound '" + Ttok + "'");
        c.K = parse_rational(field(parts[1], "K", lineno));
        const std::string Bs = field(parts[2], "B", lineno);
        if (c.B.set_str(Bs, 10) != 0) throw Error("bad B '" + Bs + "'");
        c.epsilon = parse_rational(field(parts[3], "eps", lineno));
        c.r = parse_rational(field(parts[4], "r", lineno));
        header = true;
        continue;
      }
      const auto arrow = line.find("->");
      if (arrow == std::string::npos) {
        if (in_points) throw Error("hypersurface line after point lines");
        c.hypersurfaces.push_back(Hypersurface::parse(line));
        continue;
      }
      in_points = true;
      const auto at = line.find('@', arrow);
      if (at == std::string::npos) throw Error("point line lacks '@ box<j>'");
      c.points.push_back(parse_point(line.substr(0, arrow)));
      const auto target = words(line.substr(arrow + 2, at - arrow - 2));
      if (target.size() != 1) throw Error("point line needs one target");
      c.assignment.push_back(target[0] == "unassigned" ? -1 : static_cast<long>(parse_index(target[0], "h", lineno)));
      const auto boxs = words(line.substr(at + 1));
      if (boxs.size() != 1) throw Error("point line needs one box");
      c.box.push_back(parse_index(boxs[0], "box", lineno));
    } catch (const Error& e) {
      const std::string msg = e.what();
      if (msg.starts_with("line ")) throw;
      throw Error("line " + std::to_string(lineno) + ": " + msg);
    }
  }
  if (!header) throw Error("certificate is empty");
  return c;
}

VerifyResult verify_certificate(const std::string& cert_text, const std::string& preimage_text) {
  auto fail = [](std::string m) { return VerifyResult{false, std::move(m)}; };
  ParsedCertificate c;
  try {
    c = parse_certificate(cert_text);
  } catch (const Error& e) {
    return fail(std::string("parse error: ") + e.what());
  }
  try {
    const ExponentProfile pa = profile(c.m, c.n, c.e, JMode::Exact);
    const ExponentProfile pb = profile(c.m, c.n, c.e, JMode::Bound);
    if (c.B != pa.B) return fail("B does not match the recomputed value " + pa.B.get_str());
    if (c.epsilon != pa.epsilon) return fail("eps does not match the recomputed value " + to_string(pa.epsilon));
    if (c.K != Rational(pa.K) && c.K != Rational(pb.K)) return fail("K matches neither the exact nor the bound constant");
    const Integer K = c.K.get_num();
    if (c.r != radius_r(K, pa, c.T)) return fail("r is not the certified radius for K and T");
    const Integer bound = count_bound(K, pa, c.T);
    if (Integer(c.hypersurfaces.size()) > bound)
      return fail("hypersurface count " + std::to_string(c.hypersurfaces.size()) + " exceeds bound " + bound.get_str());
    for (std::size_t i = 0; i < c.hypersurfaces.size(); ++i) {
      const auto& h = c.hypersurfaces[i];
      if (h.n != c.n || h.e != c.e) return fail("hypersurface h" + std::to_string(i) + " has wrong n or e");
      for (std::size_t j = 0; j < i; ++j)
        if (c.hypersurfaces[j] == h) return fail("hypersurface h" + std::to_string(i) + " duplicates h" + std::to_string(j));
    }

    std::vector<std::pair<QPoint, QPoint>> pre;
    {
      std::istringstream is(preimage_text);
      std::string line;
      unsigned lineno = 0;
      while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto at = line.find('@');
        if (at == std::string::npos) return fail("point list line " + std::to_string(lineno) + " lacks '@'");
        try {
          pre.push_back({parse_point(line.substr(0, at)), parse_point(line.substr(at + 1))});
        } catch (const Error& e) {
          return fail("point list line " + std::to_string(lineno) + ": " + e.what());
        }
      }
    }
    if (pre.size() != c.points.size()) return fail("point list length differs from certificate");

    const Tiling tiling(c.m, c.r);
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const QPoint& x = c.points[i];
      const std::string name = "point " + format_point(x);
      if (x.size() != c.n) return fail(name + " has wrong arity");
      if (height_point(x) > c.T) return fail(name + " exceeds height " + c.T.get_str());
      if (c.assignment[i] < 0) return fail(name + " is unassigned (no hypersurface fits box" + std::to_string(c.box[i]) + ")");
      if (static_cast<std::size_t>(c.assignment[i]) >= c.hypersurfaces.size())
        return fail(name + " refers to a missing hypersurface");
      if (c.hypersurfaces[static_cast<std::size_t>(c.assignment[i])].evaluate(x) != 0)
        return fail(name + " does not lie on h" + std::to_string(c.assignment[i]));
      if (pre[i].first != x) return fail(name + " does not match point list entry " + std::to_string(i + 1));
      const QPoint& t = pre[i].second;
      if (t.size() != c.m) return fail(name + " has a preimage of wrong arity");
      for (const auto& ti : t)
        if (ti < 0 || ti > 1) return fail(name + " has a preimage outside the unit cube");
      if (!tiling.contains(c.box[i], t)) return fail(name + " has its preimage outside box" + std::to_string(c.box[i]));
    }
    std::set<QPoint> seen(c.points.begin(), c.points.end());
    if (seen.size() != c.points.size()) return fail("certificate lists a point twice");
    return VerifyResult{true, std::to_string(c.points.size()) + " points on " + std::to_string(c.hypersurfaces.size()) +
                                  " hypersurfaces (bound " + bound.get_str() + ")"};
  } catch (const Error& e) {
    return fail(e.what());
  }
}

}  // namespace ratcover
