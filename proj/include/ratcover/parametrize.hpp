// Parametrizations with certified derivative bounds: rational charts
// (0,1)^m -> R^n, coordinate inversion, affine rescaling, the chain-rule
// polynomials p_ik, and reparametrization of univariate rational functions.
#pragma once

#include "ratcover/exponents.hpp"
#include "ratcover/interval.hpp"
#include "ratcover/linalg.hpp"
#include "ratcover/mpoly.hpp"
#include "ratcover/upoly.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ratcover {

enum class CertMethod { Exact, IntervalVerified, Declared };
std::string to_string(CertMethod m);
CertMethod parse_cert_method(const std::string& s);

struct BoundCertificate {
  unsigned order = 0;  ///< derivatives of order <= this are covered
  Rational bound;      ///< sup-norm bound for every such derivative
  CertMethod method = CertMethod::Declared;
};

/// Raised when a sweep cannot decide a bound; the message names the box.
class CertificationError : public Error {
 public:
  using Error::Error;
};

struct CertifyOptions {
  /// Boxes narrower than this are not split further.
  Rational min_width = Rational(1, Integer(1) << 20);
  unsigned max_depth = 40;
};

using PreimageOracle = std::function<std::optional<QPoint>(const QPoint&)>;

/// A rational map on the closed cube [0,1]^m with an exact preimage oracle.
struct StrongParam {
  std::string name;
  unsigned m = 1;
  unsigned n = 2;
  std::vector<RatFuncM> coords;
  PreimageOracle preimage;
  std::optional<BoundCertificate> certificate;

  QPoint operator()(const QPoint& t) const;
  std::vector<Interval> eval(const std::vector<Interval>& box) const;
  Rational derivative(unsigned coord, const MultiIndex& alpha, const QPoint& t) const;
  /// Preimage checked by exact re-evaluation; nullopt if none.
  std::optional<QPoint> checked_preimage(const QPoint& x) const;
};

/// Proves |d^alpha f_j| <= bound on [0,1]^m for every coordinate j and
/// |alpha| <= k by interval bisection. Throws CertificationError when a
/// box stays undecided at the resolution limit.
BoundCertificate certify(const StrongParam& f, unsigned k, const Rational& bound = 1,
                         const CertifyOptions& opts = {});

/// Inverts the coordinates listed in I (0-based). Throws on a zero there.
QPoint invert_coordinates(const QPoint& a, const std::vector<unsigned>& I);

/// (c+1)^m pieces f(o + t/c) with offsets o_j = j (1 - 1/c) / c per axis.
/// If |f| <= 1 and |f^(alpha)| <= c for 1 <= |alpha| <= k, every piece has
/// all derivatives up to order k bounded by 1; the pieces carry a declared
/// certificate recording that.
std::vector<StrongParam> rescale_to_unit(const StrongParam& f, unsigned c, unsigned k);

/// p_ik for 1 <= i <= k as polynomials in x_1..x_k (index [i][k], i, k >= 1):
/// (f o g)^(k) = sum_i f^(i)(g) p_ik(g', ..., g^(k-i+1)).
std::vector<std::vector<MPoly>> chain_rule_polys(unsigned k);

/// (f o g)^(k)(t) exactly. Throws at a pole of f or g.
Rational compose_derivative(const RatFunc1& f, const RatFunc1& g, unsigned k, const Rational& t);

/// One piece of a reparametrization of the graph of f. The base maps
/// u in [0,1] to x; the piece is s -> (x(P(s)), f(x(P(s)))) with P a
/// polynomial mapping [0,1] into [0,1].
struct UniPiece {
  enum class Base { Constant, Affine, Inverse };
  Base base = Base::Affine;
  unsigned segment = 0;  ///< level-one segment this piece refines
  // Constant: x = x0. Affine: x = x0 + dx u.
  Rational x0, dx;
  // Inverse: x = f^{-1}(y0 + dy u) for f restricted to [xa, xb].
  Rational xa, xb, y0, dy;
  UPoly P = UPoly::x();
  std::vector<Rational> bounds;  ///< per derivative order, for both coordinates
  CertMethod method = CertMethod::Declared;
};

struct Reparametrization {
  RatFunc1 f;
  unsigned k = 1;
  std::vector<UniPiece> pieces;
};

/// Enclosure of coordinate c (0: x = phi, 1: y = f o phi) of the piece's
/// derivative of the given order over s in S.
Interval piece_derivative(const RatFunc1& f, const UniPiece& p, unsigned coord, unsigned order, const Interval& S);

/// Fills p.bounds for orders 0..k by an interval sweep. Throws
/// CertificationError with the offending interval if some enclosure cannot
/// be made finite.
void certify_piece(const RatFunc1& f, UniPiece& p, unsigned k, const CertifyOptions& opts = {});

/// Requires |f| <= 1 on the closed domain and k >= 1. Level one splits at
/// the roots of (f')^2 - 1; each further level splits where the top
/// derivative's magnitude is not monotone, orients, and substitutes t^2.
Reparametrization reparametrize_univariate(const RatFunc1& f, unsigned k, const CertifyOptions& opts = {});

/// True when the x-images of the pieces cover the closed domain up to
/// finitely many points.
bool covers_domain(const Reparametrization& r);

void write_reparametrization(std::ostream& os, const Reparametrization& r);
Reparametrization read_reparametrization(std::istream& is);

}  // namespace ratcover
