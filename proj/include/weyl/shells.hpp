#pragma once

// Representation numbers and weighted sums over lattice shells
// {m : ||m||^2 = k}, over all integer vectors or over vectors with every
// coordinate odd.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weyl/exact.hpp"
#include "weyl/poly.hpp"

namespace weyl {

enum class LatticeParity { all, odd };

LatticeParity parse_lattice_parity(const std::string& text);
std::string to_string(LatticeParity p);

/// r_n(k) or r_n^*(k) for k = 0..k_max.
struct ShellTable {
  int n = 0;
  LatticeParity parity = LatticeParity::all;
  std::int64_t k_max = 0;
  std::vector<Integer> values;
};

/// S_n(k, P) = sum of P(m) over the shell, k = 0..k_max.
struct ShellSumTable {
  int n = 0;
  LatticeParity parity = LatticeParity::all;
  std::int64_t k_max = 0;
  MultiPoly poly;
  std::vector<Rational> values;
};

ShellTable rep_table(int n, std::int64_t k_max, LatticeParity parity, unsigned threads = 0);

/// All shells up to k_max at once. Each monomial's shell sum is a
/// convolution of one-dimensional weighted square indicators.
ShellSumTable shell_sum_table(const MultiPoly& p, std::int64_t k_max, LatticeParity parity, unsigned threads = 0);

/// One shell by direct enumeration of its points.
Rational shell_sum(int n, std::int64_t k, const MultiPoly& p, LatticeParity parity = LatticeParity::all);

/// Sum of P(m) over m in Z^n with sum a_i^2 m_i^2 = k.
Rational shell_sum_form(std::span<const std::int64_t> a, std::int64_t k, const MultiPoly& p);

/// Prime factorization, ascending primes.
std::vector<std::pair<Integer, unsigned>> factorize(const Integer& k);
Integer sigma(const Integer& k);

/// 8 * sum of divisors of k not divisible by 4.
Integer jacobi_r4(const Integer& k);
/// Four odd squares: 16 sigma(k/4) when k = 4 mod 8, else 0.
Integer carlitz_r4_odd(const Integer& k);

struct AverageRow {
  std::int64_t radius = 0;
  Integer count;       // sum_{k <= R^2} r(k)
  BigFloat main_term;  // C R^n (divided by 2^n for odd vectors)
  BigFloat difference; // count - main_term
};

/// Lattice points in the ball of radius R (R = 1..R_max) against the
/// volume main term.
std::vector<AverageRow> average_compare(int n, std::int64_t r_max, LatticeParity parity, int digits,
                                        unsigned threads = 0);

/// Ball-volume constant used by average_compare: C_n, or C_n / 2^n for odd.
ExactValue average_constant(int n, LatticeParity parity);

/// S_n(k,P) / (k^{nu/2} r_n(k)) minus the normalized sphere average of P.
/// Throws DomainError on an empty shell or non-homogeneous P.
BigFloat equidist_error(int n, std::int64_t k, const MultiPoly& p, int digits);

struct ExtremalRatio {
  Integer k;        // product of the first j odd primes
  Integer r4;
  BigFloat ratio;   // r4 / (k log log k)
  BigFloat reference;  // 48 e^gamma / pi^2
};

ExtremalRatio r4_extremal_ratio(int j, int digits);

struct JumpCheck {
  BigFloat min_ratio;           // min over nonempty shells of r(k) / k^{n/2-1}
  std::int64_t argmin = 0;
  std::int64_t shells_checked = 0;
  /// Odd parity: k in range with k = n mod 4 but not mod 8 (always empty).
  std::int64_t empty_mod4_classes = 0;
};

JumpCheck jump_check(int n, std::int64_t k_min, std::int64_t k_max, LatticeParity parity, int digits,
                     unsigned threads = 0);

}  // namespace weyl
