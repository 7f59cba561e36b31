// The covering engine: radius r from K r^B <= T^{-neD}, tiling of the
// parameter cube, per-box hypersurface fitting, and the cluster
// determinant check.
#pragma once

#include "ratcover/bound_constant.hpp"
#include "ratcover/exponents.hpp"
#include "ratcover/linalg.hpp"
#include "ratcover/parametrize.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ratcover {

/// Largest r = 2^{-j} <= 1 with K r^B <= T^{-neD}.
Rational radius_r(const Integer& K, const ExponentProfile& prof, const Integer& T);

/// ceil(K^{m/B} T^eps), computed as the least N with N^B >= K^m T^{mneD}.
Integer count_bound(const Integer& K, const ExponentProfile& prof, const Integer& T);

/// Boxes of sup-radius r covering [0,1]^m, indexed row-major with the
/// first axis most significant.
class Tiling {
 public:
  Tiling(unsigned m, const Rational& r);
  unsigned m() const { return m_; }
  const Rational& r() const { return r_; }
  std::size_t per_axis() const { return per_axis_; }
  /// Center of the j-th interval along an axis, 0-based.
  Rational axis_center(std::size_t j) const;
  std::size_t box_count() const;
  QPoint center(std::size_t box) const;
  bool contains(std::size_t box, const QPoint& t) const;
  /// Lexicographically smallest box containing t (t in [0,1]^m).
  std::size_t box_of(const QPoint& t) const;

 private:
  unsigned m_;
  Rational r_;
  std::size_t per_axis_ = 1;
};

/// Centers of the tiling, flattened in box order.
std::vector<QPoint> tile_unit_cube(unsigned m, const Rational& r);

struct CoverParams {
  ExponentProfile profile;
  Integer T;
  Rational r;
  std::size_t boxes_per_axis = 0;
  Integer count_bound;
};

struct CoverCertificate {
  CoverParams params;
  std::vector<Hypersurface> hypersurfaces;
  std::vector<QPoint> points;
  std::vector<QPoint> preimages;
  std::vector<long> assignment;      ///< hypersurface index, or -1 if unassigned
  std::vector<std::size_t> box;      ///< box index per point
  std::vector<std::size_t> violations;  ///< boxes where no fit existed
  unsigned denominator_checks = 0;   ///< boxes with exactly D points replayed
};

/// Covers the given points of the chart image. Each box's points are fitted
/// in box order: an existing hypersurface is reused if it vanishes on all
/// of them; otherwise the fit includes exact chart samples from the box,
/// falling back to the box points alone; a box with no fit is recorded as
/// a violation. Throws on an uncertified chart, a point above height T, or
/// a point without preimage.
CoverCertificate cover_points(const StrongParam& param, unsigned e, const Integer& T,
                              const std::vector<QPoint>& points, JMode mode = JMode::Auto);

struct ClusterReport {
  unsigned trials = 0;
  unsigned failures = 0;  ///< clusters with |det| >= K r^B
  Rational max_abs_det;
  Rational bound;  ///< K r^B
  Rational max_ratio;
};

/// Samples `trials` clusters of D(n,e) parameters within sup-distance r of a
/// random centre and compares |det(f(a_i)^alpha)| with K r^B exactly.
ClusterReport cluster_determinant_check(const StrongParam& param, unsigned e, const Rational& r, unsigned trials,
                                        std::uint64_t seed, JMode mode = JMode::Exact);

}  // namespace ratcover
