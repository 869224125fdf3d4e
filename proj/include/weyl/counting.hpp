#pragma once

// The eigenvalue counting function N(lambda) of SO(N) by two routes:
// summing multiplicities over the spectrum, and summing the multiplicity
// polynomial over a lattice ball. Also the exact smooth main term, the
// radial (harmonic) decomposition identity, error series and envelope fits.

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "weyl/exact.hpp"
#include "weyl/poly.hpp"
#include "weyl/shells.hpp"
#include "weyl/weights.hpp"

namespace weyl {

/// N(lambda) from the spectrum.
Integer count_direct(const GroupParams& g, std::int64_t lambda);
/// N(0..lambda_max) from the spectrum.
std::vector<Integer> count_direct_table(const GroupParams& g, std::int64_t lambda_max);

/// 2^{n-1} n! for even N, 2^n n! for odd N.
Integer symmetry_factor(const GroupParams& g);

/// Sums of the multiplicity polynomial over lattice shells:
/// shell(s) = sum of m(x) over x in Z^n (odd N: all coordinates odd) with
/// ||x||^2 = s, for s up to the radius of lambda_max. Built once, queried for
/// any lambda <= lambda_max.
class LatticeCounter {
 public:
  LatticeCounter(const GroupParams& g, std::int64_t lambda_max, unsigned threads = 0);

  const GroupParams& group() const { return group_; }
  std::int64_t lambda_max() const { return lambda_max_; }

  /// sum of m(x) over ||x||^2 <= r2 (no symmetry division).
  const Integer& ball_sum(std::int64_t r2) const;
  std::int64_t max_radius_squared() const { return static_cast<std::int64_t>(prefix_.size()) - 1; }

  /// N(lambda); the division by the symmetry factor is asserted exact.
  Integer count(std::int64_t lambda) const;

 private:
  GroupParams group_;
  std::int64_t lambda_max_;
  std::vector<Integer> prefix_;
};

Integer count_lattice(const GroupParams& g, std::int64_t lambda, unsigned threads = 0);

/// m(x) as an exact polynomial in x_1..x_n.
MultiPoly multiplicity_polynomial(const GroupParams& g);

struct SmoothTerm {
  ExactValue coefficient;  // contributes coefficient * R^power
  int power = 0;
};

/// (1/symmetry) * integral of m over the ball of radius R (odd N: with the
/// extra 2^{-n} density of odd vectors), as exact terms in R, where
/// R^2 = scale * lambda + shift.
struct SmoothMain {
  GroupParams group;
  std::vector<SmoothTerm> terms;  // ascending power

  /// C_d with main term C_d lambda^{d/2}.
  ExactValue leading_coefficient() const;
  Rational leading_half_power() const;
  BigFloat evaluate(std::int64_t lambda, int digits) const;
};

SmoothMain smooth_main(const GroupParams& g);

/// Harmonic decomposition of the multiplicity polynomial, all homogeneous
/// parts concatenated. Even N only.
struct RadialDecomposition {
  GroupParams group;
  MultiPoly multiplicity;
  HarmonicDecomposition parts;
};

RadialDecomposition radial_decomposition(const GroupParams& g);

struct RadialCheck {
  std::int64_t r2_max = 0;
  std::int64_t mismatches = 0;
  std::int64_t first_mismatch = -1;
  std::vector<Integer> lattice_sums;   // lhs for r2 = 0..r2_max
  std::vector<Rational> radial_sums;   // rhs for r2 = 0..r2_max
};

/// Compares sum_{||x||^2 <= r2} m(x) with
/// sum_j sum_{k <= r2} k^{l_j} S_n(k, P_j) for every r2 <= r2_max.
RadialCheck radial_check(const RadialDecomposition& rd, std::int64_t r2_max, unsigned threads = 0);

struct ErrorRow {
  std::int64_t lambda = 0;
  Integer count;
  BigFloat smooth;
  BigFloat error;  // count - smooth
};

struct ErrorSeries {
  GroupParams group;
  int digits = 0;
  std::vector<ErrorRow> rows;
};

ErrorRow error_row(const LatticeCounter& counter, const SmoothMain& main, std::int64_t lambda, int digits);

/// Rows at lambda = step, 2 step, ... <= lambda_max. Throws PrecisionError
/// when `digits` cannot resolve the smooth term to well below one unit.
ErrorSeries error_series(const GroupParams& g, std::int64_t lambda_max, std::int64_t step, int digits,
                         unsigned threads = 0);

struct EnvelopeWindow {
  int j = 0;           // window [2^j, 2^{j+1})
  std::int64_t points = 0;
  double log_mid = 0;  // log(1.5 * 2^j)
  double log_sup = 0;
};

struct EnvelopeFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // root-mean-square residual of the log-log fit
  std::vector<EnvelopeWindow> windows;
};

struct EnvelopePoint {
  std::int64_t t = 0;  // abscissa, >= 1
  BigFloat magnitude;  // |error|
};

/// Least squares on (log window midpoint, log window sup) over dyadic
/// windows starting at 2^first_window; windows with zero sup are dropped.
/// Throws InsufficientData when fewer than 4 windows remain.
EnvelopeFit envelope_fit(std::span<const EnvelopePoint> points, int first_window = 0);

/// Same over an error series, after checking that each window's sup is more
/// than 10^10 units in the last place of the smooth term.
EnvelopeFit envelope_fit(const ErrorSeries& series, int first_window = 0);

/// As envelope_fit on points, but each t is R^2 and window j collects
/// R in [2^j, 2^{j+1}).
EnvelopeFit envelope_fit_squared(std::span<const EnvelopePoint> points, int first_window = 0);

/// Dyadic envelope over real R in [1, r_max] of |sum_{k<=R^2} r(k) - C R^n|.
/// Between consecutive integer values of R^2 the error is decreasing, so each
/// window supremum is attained on one side of a jump; both sides are used.
EnvelopeFit average_envelope_fit(int n, std::int64_t r_max, LatticeParity parity, int digits,
                                 unsigned threads = 0);

nlohmann::json fit_to_json(const EnvelopeFit& fit);

}  // namespace weyl
