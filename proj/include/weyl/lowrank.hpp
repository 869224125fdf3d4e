#pragma once

// Rank one and rank two: closed forms for SO(2) and SO(3), summation with
// the sawtooth psi(t) = t - floor(t) - 1/2, the three-term split of N(lambda)
// for SO(4), trigonometric majorant/minorant of psi, exponent-pair
// bookkeeping, and the three-dimensional lattice average fit.

#include <cstdint>
#include <vector>

#include "weyl/counting.hpp"
#include "weyl/exact.hpp"
#include "weyl/poly.hpp"

namespace weyl {

Integer so2_count(std::int64_t lambda);
Integer so3_count(std::int64_t lambda);

/// psi(t) = t - floor(t) - 1/2
Rational sawtooth(const Rational& t);

/// Dense univariate polynomial, coefficient i multiplies y^i.
using UniPoly = std::vector<Rational>;

/// Requires a polynomial in one variable.
UniPoly to_unipoly(const MultiPoly& f);

/// Exact integral of f(y) psi(y) over [a, b], piecewise over unit intervals.
Rational integrate_times_sawtooth(const UniPoly& f, const Rational& a, const Rational& b);

struct SoninResult {
  Rational lhs;  // sum_{a < k <= b} f(k)
  Rational rhs;  // psi(a) f(a) - psi(b) f(b) + int_a^b (f + psi f')
  bool holds() const { return lhs == rhs; }
};

SoninResult sonin_sum(const MultiPoly& f, Rational a, Rational b);

/// N(lambda) for SO(4) split as T1 + T2 + T3 (R^2 = lambda + 1):
///   T1 = 2 sum' int_{I_x} m dy
///   T2 = -2 sum' (R^2 - 2x^2)^2 psi(sqrt(R^2 - x^2))
///   T3 = 2 sum' int_{I_x} 4y(y^2 - x^2) psi(y) dy
/// over 0 <= x <= R/sqrt2 with I_x = (x, sqrt(R^2 - x^2)] and the x = 0 term
/// halved.
struct TSplit {
  std::int64_t lambda = 0;
  BigFloat t1, t2, t3;
  Integer count;
  BigFloat residual;  // t1 + t2 + t3 - count
  BigFloat t3_over_r4;
};

TSplit t_split(std::int64_t lambda, int digits);

/// a_0 + sum_{m=1}^{M} (c_m cos 2 pi m x + s_m sin 2 pi m x)
struct TrigPolynomial {
  int degree = 0;
  Rational constant;
  std::vector<Rational> cos_coeffs;   // c_1..c_M
  std::vector<BigFloat> sin_coeffs;   // s_1..s_M

  BigFloat evaluate(const Rational& x, int digits) const;
  /// |a_m| for the complex form sum_{|m|<=M} a_m e(mx).
  BigFloat coefficient_abs(int m, int digits) const;
};

struct PsiMajorants {
  TrigPolynomial plus;
  TrigPolynomial minus;
};

/// Vaaler's polynomial plus/minus the Fejer kernel scaled by 1/(2M+2).
PsiMajorants psi_majorants(int M, int digits);

struct MajorantGridCheck {
  std::int64_t points = 0;
  std::int64_t violations = 0;          // Q- > psi or Q+ < psi beyond tolerance
  std::int64_t reflection_failures = 0; // Q-(x) != -Q+(-x) beyond tolerance
  std::int64_t coefficient_failures = 0;
  BigFloat max_gap;   // max (Q+ - Q-)
  BigFloat mean_gap;  // grid mean of (Q+ - Q-)
};

/// Evaluates on x = i / points, i = 0..points-1, at `digits` precision with
/// tolerance 10^{10 - digits}.
MajorantGridCheck check_majorants(const PsiMajorants& q, std::int64_t points, int digits);

struct ExponentPair {
  Rational alpha;
  Rational beta;
};

struct ExponentPairResult {
  Rational m_exponent;    // (1 - beta) / (1 + alpha)
  Rational t2_exponent;   // alpha (1 - beta) / (1 + alpha) + beta + 4
  Rational weyl_deficit;  // d/2 - t2_exponent / 2 with d = 6 (SO(4))
  bool degenerate = false;  // beta == 1
};

ExponentPairResult exponent_pair_calc(ExponentPair p);

struct R3Fit {
  EnvelopeFit all;  // |sum_{k<=R^2} r_3(k) - (4 pi / 3) R^3|
  EnvelopeFit odd;  // same for odd vectors with constant (4 pi / 3) / 8
};

R3Fit r3_average_fit(std::int64_t r_max, int digits, unsigned threads = 0);

}  // namespace weyl
