// Text form of covering certificates and an independent verifier that
// replays them with exact arithmetic.
#pragma once

#include "ratcover/cover.hpp"

#include <string>

namespace ratcover {

/// Header "m n e T; K=<p/q>; B=<int>; eps=<p/q>; r=<p/q>", one hypersurface
/// line each, then "x1,...,xn -> h<i> @ box<j>" per point ("-> unassigned"
/// for points in a violating box).
std::string serialize_certificate(const CoverCertificate& cert);
/// Companion point list: "x1,...,xn @ t1,...,tm" per point, same order.
std::string serialize_preimages(const CoverCertificate& cert);

struct ParsedCertificate {
  unsigned m = 0, n = 0, e = 0;
  Integer T;
  Rational K;
  Integer B;
  Rational epsilon;
  Rational r;
  std::vector<Hypersurface> hypersurfaces;
  std::vector<QPoint> points;
  std::vector<long> assignment;
  std::vector<std::size_t> box;
};

/// Throws Error naming the line number on malformed input.
ParsedCertificate parse_certificate(const std::string& text);

struct VerifyResult {
  bool ok = false;
  std::string message;  ///< first failure, or a summary on success
};

/// Replays the certificate from its text and the companion point list
/// alone. Malformed input is reported as a failure, not thrown.
VerifyResult verify_certificate(const std::string& cert_text, const std::string& preimage_text);

}  // namespace ratcover
