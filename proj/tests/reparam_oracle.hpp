// Independent evaluation of reparametrization pieces: the explicit chain rule
// for affine pieces, closed-form inverse-function derivatives for inverse
// pieces, and a grid/intermediate-value test for coverage.
#pragma once

#include "oracles.hpp"
#include "ratcover/interval.hpp"
#include "ratcover/parametrize.hpp"

#include <array>

namespace oracle {

using ratcover::RatFunc1;
using ratcover::UniPiece;
using ratcover::UPoly;

struct PieceSample {
  // values[c][j]: order-j derivative of coordinate c (0: x, 1: y = f(x)).
  std::array<std::array<Rational, 4>, 2> values;
  bool exact = true;  ///< false when x had to be located numerically
};

inline UPoly affine_of(const Rational& a, const Rational& b, const UPoly& P) {
  return UPoly::constant(a) + b * P;
}

inline std::array<Rational, 4> upoly_derivs(UPoly p, const Rational& s) {
  std::array<Rational, 4> v;
  for (unsigned j = 0; j < 4; ++j) {
    v[j] = p(s);
    p = p.derivative();
  }
  return v;
}

// f and its first three derivatives, differentiated once up front.
struct Derivs {
  std::array<RatFunc1, 4> d;
  explicit Derivs(const RatFunc1& f) {
    d[0] = f;
    for (unsigned j = 1; j < 4; ++j) d[j] = d[j - 1].derivative();
  }
  std::array<Rational, 4> operator()(const Rational& x) const { return {d[0](x), d[1](x), d[2](x), d[3](x)}; }
};

// x in [a, b] with f(x) = y, to within 2^-bits, by sign bisection.
inline Rational locate(const RatFunc1& f, Rational a, Rational b, const Rational& y, unsigned bits = 64) {
  const int sa = sgn(f(a) - y);
  if (sa == 0) return a;
  if (sgn(f(b) - y) == 0) return b;
  const Rational eps(1, Integer(1) << bits);
  while (b - a > eps) {
    Rational m = (a + b) / 2;
    const int sm = sgn(f(m) - y);
    if (sm == 0) return m;
    if (sm == sa) a = m;
    else b = m;
  }
  return (a + b) / 2;
}

// Derivatives of order 0..3 of both coordinates at s.
inline PieceSample sample_piece(const Derivs& f, const UniPiece& p, const Rational& s) {
  PieceSample out;
  switch (p.base) {
    case UniPiece::Base::Constant: {
      out.values[0] = {p.x0, 0, 0, 0};
      out.values[1] = {f.d[0](p.x0), 0, 0, 0};
      break;
    }
    case UniPiece::Base::Affine: {
      const auto u = upoly_derivs(affine_of(p.x0, p.dx, p.P), s);
      out.values[0] = u;
      // Chain rule for f(u(s)), written out to third order.
      const auto fd = f(u[0]);
      out.values[1] = {fd[0], fd[1] * u[1], fd[2] * u[1] * u[1] + fd[1] * u[2],
                       fd[3] * u[1] * u[1] * u[1] + 3 * fd[2] * u[1] * u[2] + fd[1] * u[3]};
      break;
    }
    case UniPiece::Base::Inverse: {
      const UPoly Y = affine_of(p.y0, p.dy, p.P);
      const auto y = upoly_derivs(Y, s);
      out.values[1] = y;
      const Rational x = locate(f.d[0], p.xa, p.xb, y[0]);
      const auto fd = f(x);
      // g = f^{-1}: g' = 1/f', g'' = -f''/f'^3, g''' = (3 f''^2 - f' f''') / f'^5.
      const Rational g1 = 1 / fd[1];
      const Rational g2 = -fd[2] / (fd[1] * fd[1] * fd[1]);
      const Rational g3 = (3 * fd[2] * fd[2] - fd[1] * fd[3]) / ratcover::rpow(fd[1], 5);
      out.values[0] = {x, g1 * y[1], g2 * y[1] * y[1] + g1 * y[2],
                       g3 * y[1] * y[1] * y[1] + 3 * g2 * y[1] * y[2] + g1 * y[3]};
      out.exact = false;
      break;
    }
  }
  return out;
}

// Whether some piece's x-image contains x, judged by the intermediate value
// theorem on a grid of 2^grid_bits + 1 parameters. The grid values are
// computed once per piece.
class Coverage {
 public:
  Coverage(const RatFunc1& f, const std::vector<UniPiece>& pieces, unsigned grid_bits = 10) : f_(f) {
    const unsigned long N = 1ul << grid_bits;
    for (const auto& p : pieces) {
      Track t{p.base, p.x0, p.xa, p.xb, {}};
      if (p.base != UniPiece::Base::Constant) {
        const UPoly curve = p.base == UniPiece::Base::Affine ? affine_of(p.x0, p.dx, p.P) : affine_of(p.y0, p.dy, p.P);
        for (unsigned long i = 0; i <= N; ++i) t.grid.push_back(curve(ratcover::make_rational(Integer(i), Integer(N))));
      }
      tracks_.push_back(std::move(t));
    }
  }

  bool operator()(const Rational& x) const {
    for (const auto& t : tracks_) {
      if (t.base == UniPiece::Base::Constant) {
        if (t.x0 == x) return true;
        continue;
      }
      if (t.base == UniPiece::Base::Inverse && (x < t.xa || x > t.xb)) continue;
      const Rational target = t.base == UniPiece::Base::Affine ? x : f_(x);
      for (std::size_t i = 1; i < t.grid.size(); ++i) {
        const Rational& a = t.grid[i - 1];
        const Rational& b = t.grid[i];
        if ((a <= target && target <= b) || (b <= target && target <= a)) return true;
      }
    }
    return false;
  }

 private:
  struct Track {
    UniPiece::Base base;
    Rational x0, xa, xb;
    std::vector<Rational> grid;
  };
  RatFunc1 f_;
  std::vector<Track> tracks_;
};

inline bool covered(const RatFunc1& f, const std::vector<UniPiece>& pieces, const Rational& x, unsigned grid_bits = 10) {
  return Coverage(f, pieces, grid_bits)(x);
}

// Random num/den of degree <= 4 with small integer coefficients, pole-free
// on [0,1] and scaled so |f| <= 1 there.
inline RatFunc1 random_bounded_ratfunc(Rng& rng) {
  while (true) {
    RatFunc1 f;
    std::vector<Rational> n, d;
    const long dn = rng.integer(1, 4), dd = rng.integer(0, 4);
    for (long i = 0; i <= dn; ++i) n.push_back(rng.integer(-5, 5));
    for (long i = 0; i <= dd; ++i) d.push_back(rng.integer(-5, 5));
    f.num = UPoly(n);
    f.den = UPoly(d);
    if (f.num.degree() < 1 || f.den.is_zero()) continue;
    try {
      f.check_pole_free();
    } catch (const ratcover::Error&) {
      continue;
    }
    // Bound |f| on [0,1] by interval evaluation over 64 cells.
    Rational M = 0;
    for (int i = 0; i < 64; ++i) {
      const ratcover::Interval cell(ratcover::make_rational(i, 64), ratcover::make_rational(i + 1, 64));
      M = std::max(M, ratcover::eval(f, cell).mag());
    }
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), M.get_num_mpz_t(), M.get_den_mpz_t());
    if (c > 1) f.num = Rational(1, c) * f.num;
    return f;
  }
}

}  // namespace oracle
