#include "weyl/modular.hpp"

#include <algorithm>

#include "weyl/errors.hpp"
#include "weyl/shells.hpp"

namespace weyl {

ThetaCoefficients theta_coeffs(int n, const MultiPoly& p, std::int64_t k_max, unsigned threads) {
  if (p.n_vars() != n) throw DomainError("polynomial arity does not match dimension");
  if (p.is_zero() || p.degree() < 1) throw DomainError("theta coefficients need a nonconstant polynomial");
  if (!p.is_homogeneous()) throw DomainError("theta coefficients need a homogeneous polynomial");
  if (!laplacian(p).is_zero()) throw DomainError("theta coefficients need a harmonic polynomial");
  ThetaCoefficients c;
  c.n = n;
  c.poly = p;
  c.nu = p.degree();
  c.weight = Rational(c.nu) + make_rational(n, 2);
  c.weight.canonicalize();
  c.k_max = k_max;
  c.a = shell_sum_table(p, k_max, LatticeParity::all, threads).values;
  return c;
}

bool is_degenerate(const ThetaCoefficients& c) {
  return std::all_of(c.a.begin(), c.a.end(), [](const Rational& v) { return v == 0; });
}

namespace {

std::vector<std::int64_t> dyadic_points(std::int64_t from, std::int64_t k_max) {
  std::vector<std::int64_t> ks;
  for (std::int64_t K = from; K <= k_max; K *= 2) ks.push_back(K);
  if (!ks.empty() && ks.back() != k_max) ks.push_back(k_max);
  return ks;
}

/// K^{r} for rational r with denominator 1 or 2.
BigFloat power_of(std::int64_t K, const Rational& r, int digits) {
  BigFloat base(K, digits);
  BigFloat out = pow(base, Integer(r.get_num() / r.get_den()).get_si());
  Rational frac = r - Rational(Integer(r.get_num() / r.get_den()));
  if (frac != 0) {
    if (frac.get_den() != 2) throw DomainError("weight must be a half-integer");
    out *= sqrt(base);
  }
  return out;
}

}  // namespace

std::vector<StatRow> partial_sum_stat(const ThetaCoefficients& c, int digits) {
  if (c.k_max < 4) throw DomainError("partial sum statistic needs k_max >= 4");
  std::vector<StatRow> rows;
  const Rational half_weight = c.weight / 2;
  Rational running = 0;
  std::int64_t done = 0;
  for (const auto K : dyadic_points(4, c.k_max)) {
    while (done < K) running += c.a[static_cast<std::size_t>(++done)];
    BigFloat value(abs(running), digits);
    value /= power_of(K, half_weight, digits) * log(BigFloat(K, digits));
    rows.push_back({K, std::move(value)});
  }
  return rows;
}

std::vector<StatRow> mean_square_stat(const ThetaCoefficients& c, int digits) {
  if (c.k_max < 1) throw DomainError("mean square statistic needs k_max >= 1");
  std::vector<StatRow> rows;
  Rational running = 0;
  std::int64_t done = 0;
  for (const auto K : dyadic_points(1, c.k_max)) {
    while (done < K) {
      const auto& v = c.a[static_cast<std::size_t>(++done)];
      running += v * v;
    }
    BigFloat value(running, digits);
    value /= power_of(K, c.weight, digits);
    rows.push_back({K, std::move(value)});
  }
  return rows;
}

BandSummary band(const ThetaCoefficients& c, const std::vector<StatRow>& rows, std::int64_t k_from) {
  BandSummary b;
  b.weight = c.weight;
  b.degenerate = is_degenerate(c);
  bool first = true;
  for (const auto& row : rows) {
    if (row.K < k_from) continue;
    if (first || row.value < b.band_min) b.band_min = row.value;
    if (first || row.value > b.band_max) b.band_max = row.value;
    first = false;
  }
  if (first) throw InsufficientData("no statistic rows at or above K=" + std::to_string(k_from));
  return b;
}

nlohmann::json band_to_json(const BandSummary& b, int digits) {
  return {{"weight", to_string(b.weight)},
          {"degenerate", b.degenerate},
          {"band_min", b.band_min.to_scientific(digits)},
          {"band_max", b.band_max.to_scientific(digits)}};
}

}  // namespace weyl
