#pragma once

// Coefficients a_k = S_n(k, P) of theta series weighted by a harmonic
// polynomial P, and the two growth statistics checked against them: the
// normalized partial sums and the normalized mean square.

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "weyl/exact.hpp"
#include "weyl/poly.hpp"

namespace weyl {

struct ThetaCoefficients {
  int n = 0;
  MultiPoly poly;
  int nu = 0;          // degree of P
  Rational weight;     // nu + n/2
  std::int64_t k_max = 0;
  std::vector<Rational> a;  // a[0] = 0
};

/// Throws DomainError unless P is homogeneous, harmonic and of degree >= 1.
ThetaCoefficients theta_coeffs(int n, const MultiPoly& p, std::int64_t k_max, unsigned threads = 0);

bool is_degenerate(const ThetaCoefficients& c);

struct StatRow {
  std::int64_t K = 0;
  BigFloat value;
};

/// Dyadic K = 4, 8, ... plus k_max itself:
/// |sum_{k<=K} a_k| / (K^{r/2} log K).
std::vector<StatRow> partial_sum_stat(const ThetaCoefficients& c, int digits);

/// Dyadic K = 1, 2, 4, ... plus k_max itself: K^{-r} sum_{k<=K} a_k^2.
std::vector<StatRow> mean_square_stat(const ThetaCoefficients& c, int digits);

struct BandSummary {
  Rational weight;
  bool degenerate = false;
  BigFloat band_min;
  BigFloat band_max;
};

/// Extremes of `rows` restricted to K >= k_from.
BandSummary band(const ThetaCoefficients& c, const std::vector<StatRow>& rows, std::int64_t k_from);

nlohmann::json band_to_json(const BandSummary& b, int digits);

}  // namespace weyl
