#include "weyl/counting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "weyl/errors.hpp"
#include "weyl/parallel.hpp"
#include "weyl/shells.hpp"

namespace weyl {

Integer symmetry_factor(const GroupParams& g) {
  Integer f = 1;
  for (int i = 2; i <= g.rank; ++i) f *= i;
  f <<= static_cast<unsigned>(g.parity == Parity::even ? g.rank - 1 : g.rank);
  return f;
}

std::vector<Integer> count_direct_table(const GroupParams& g, std::int64_t lambda_max) {
  if (lambda_max < 0) throw DomainError("lambda must be nonnegative");
  std::vector<Integer> counts(static_cast<std::size_t>(lambda_max) + 1, Integer(0));
  for (const auto& entry : enumerate_spectrum(g, lambda_max)) counts[static_cast<std::size_t>(entry.eigenvalue)] += entry.multiplicity;
  for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
  return counts;
}

Integer count_direct(const GroupParams& g, std::int64_t lambda) {
  if (lambda < 0) throw DomainError("lambda must be nonnegative");
  Integer total = 0;
  for (const auto& entry : enumerate_spectrum(g, lambda)) total += entry.multiplicity;
  return total;
}

// ------------------------------------------------------------------ lattice

namespace {

struct Overflow {};

/// Weyl dimension numerator/denominator at x, in 128-bit arithmetic.
__int128 dimension_fast(std::span<const std::int64_t> x, bool odd, __int128 den) {
  __int128 num = 1;
  const std::size_t n = x.size();
  for (std::size_t a = 0; a < n; ++a) {
    const __int128 xa = x[a];
    if (odd && __builtin_mul_overflow(num, xa, &num)) throw Overflow{};
    for (std::size_t b = a + 1; b < n; ++b) {
      const __int128 xb = x[b];
      if (__builtin_mul_overflow(num, xa * xa - xb * xb, &num)) throw Overflow{};
    }
  }
  if (num % den != 0) throw std::logic_error("Weyl dimension product is not integral on the lattice");
  return num / den;
}

}  // namespace

LatticeCounter::LatticeCounter(const GroupParams& g, std::int64_t lambda_max, unsigned threads)
    : group_(g), lambda_max_(lambda_max) {
  if (lambda_max < 0) throw DomainError("lambda must be nonnegative");
  const Integer r2_big = g.radius_squared(lambda_max);
  if (!r2_big.fits_slong_p() || r2_big > Integer(1) << 40) throw DomainError("radius too large");
  const std::int64_t r2 = r2_big.get_si();
  const bool odd = g.parity == Parity::odd;
  const auto n = static_cast<std::size_t>(g.rank);
  const auto top = Integer(sqrt(r2_big)).get_si();

  // nonnegative (odd N: positive odd) coordinate values; m is even in every
  // coordinate, so each such x stands for 2^{#nonzero} sign patterns
  std::vector<std::int64_t> values;
  for (std::int64_t t = odd ? 1 : 0; t <= top; t += odd ? 2 : 1) values.push_back(t);

  Integer den_big = weyl_denominator(g);
  const __int128 den = static_cast<__int128>(den_big.get_si());

  // one accumulator per worker, leading coordinates dealt round-robin; the
  // merged sums are exact, so the split never affects the result
  const std::size_t chunks = std::min<std::size_t>(resolve_threads(threads), values.size());
  auto slabs = map_slabs<std::vector<Integer>>(chunks, threads, [&](std::size_t chunk) {
    std::vector<Integer> shells(static_cast<std::size_t>(r2) + 1, Integer(0));
    std::vector<std::int64_t> x(n, 0);
    Integer m;
    auto accumulate = [&](std::int64_t norm) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          if (x[a] == x[b]) return;  // m vanishes
        }
      }
      unsigned nonzero = 0;
      for (const auto v : x) nonzero += v != 0 ? 1u : 0u;
      try {
        const Integer dim = to_integer(dimension_fast(x, odd, den));
        m = dim * dim;
      } catch (const Overflow&) {
        m = multiplicity(x, g);
      }
      m <<= nonzero;
      shells[static_cast<std::size_t>(norm)] += m;
    };
    std::function<void(std::size_t, std::int64_t)> descend = [&](std::size_t i, std::int64_t used) {
      if (i == n) {
        accumulate(used);
        return;
      }
      for (const auto t : values) {
        const std::int64_t next = used + t * t;
        if (next > r2) break;
        x[i] = t;
        descend(i + 1, used + t * t);
      }
    };
    for (std::size_t slab = chunk; slab < values.size(); slab += chunks) {
      const std::int64_t lead = values[slab];
      x[0] = lead;
      descend(1, lead * lead);
    }
    return shells;
  });

  prefix_.assign(static_cast<std::size_t>(r2) + 1, Integer(0));
  for (const auto& shells : slabs) {
    for (std::size_t s = 0; s < shells.size(); ++s) {
      if (shells[s] != 0) prefix_[s] += shells[s];
    }
  }
  for (std::size_t s = 1; s < prefix_.size(); ++s) prefix_[s] += prefix_[s - 1];
}

const Integer& LatticeCounter::ball_sum(std::int64_t r2) const {
  if (r2 < 0 || r2 > max_radius_squared()) throw DomainError("radius outside the tabulated range");
  return prefix_[static_cast<std::size_t>(r2)];
}

Integer LatticeCounter::count(std::int64_t lambda) const {
  if (lambda < 0 || lambda > lambda_max_) throw DomainError("lambda outside the tabulated range");
  const Integer& sum = ball_sum(group_.radius_squared(lambda).get_si());
  const Integer factor = symmetry_factor(group_);
  if (!mpz_divisible_p(sum.get_mpz_t(), factor.get_mpz_t())) {
    throw std::logic_error("lattice sum is not divisible by the symmetry factor");
  }
  return Integer(sum / factor);
}

Integer count_lattice(const GroupParams& g, std::int64_t lambda, unsigned threads) {
  return LatticeCounter(g, lambda, threads).count(lambda);
}

// ------------------------------------------------------------- main term

MultiPoly multiplicity_polynomial(const GroupParams& g) {
  const int n = g.rank;
  const bool odd = g.parity == Parity::odd;
  MultiPoly dim = MultiPoly::constant(n, 1);
  for (int a = 1; a <= n; ++a) {
    const MultiPoly xa = MultiPoly::variable(n, a);
    if (odd) dim = dim * xa;
    for (int b = a + 1; b <= n; ++b) {
      const MultiPoly xb = MultiPoly::variable(n, b);
      dim = dim * (xa * xa - xb * xb);
    }
  }
  dim *= make_rational(1, weyl_denominator(g));
  return dim * dim;
}

SmoothMain smooth_main(const GroupParams& g) {
  const int n = g.rank;
  const MultiPoly m = multiplicity_polynomial(g);
  Integer prefactor_den = symmetry_factor(g);
  if (g.parity == Parity::odd) prefactor_den <<= static_cast<unsigned>(n);
  const ExactValue prefactor(make_rational(1, prefactor_den));
  SmoothMain out;
  out.group = g;
  for (const int degree : m.degrees()) {
    BallIntegral b = ball_integral(m.homogeneous_part(degree), n);
    out.terms.push_back({b.coefficient * prefactor, b.power});
  }
  return out;
}

ExactValue SmoothMain::leading_coefficient() const {
  if (terms.empty()) return {};
  const auto& top = terms.back();
  // R^p = (scale lambda + shift)^{p/2}, leading scale^{p/2} lambda^{p/2}
  Integer scale_power = 1;
  if (group.radius_scale == 4) scale_power <<= static_cast<unsigned>(top.power);
  return top.coefficient * ExactValue(Rational(scale_power));
}

Rational SmoothMain::leading_half_power() const {
  if (terms.empty()) return 0;
  Rational h(terms.back().power, 2);
  h.canonicalize();
  return h;
}

BigFloat SmoothMain::evaluate(std::int64_t lambda, int digits) const {
  const int work = digits + 10;
  const Integer r2 = group.radius_squared(lambda);
  const BigFloat root = sqrt(BigFloat(r2, work));
  BigFloat sum(work);
  for (const auto& term : terms) {
    Integer even_part;
    mpz_pow_ui(even_part.get_mpz_t(), r2.get_mpz_t(), static_cast<unsigned long>(term.power / 2));
    BigFloat t = term.coefficient.evaluate(work) * Rational(even_part);
    if (term.power % 2 == 1) t *= root;
    sum += t;
  }
  BigFloat out(digits);
  mpfr_set(out.get(), sum.get(), MPFR_RNDN);
  return out;
}

// ---------------------------------------------------------------- radial

RadialDecomposition radial_decomposition(const GroupParams& g) {
  if (g.parity != Parity::even) throw DomainError("radial decomposition is implemented for even N only");
  RadialDecomposition rd;
  rd.group = g;
  rd.multiplicity = multiplicity_polynomial(g);
  for (const int degree : rd.multiplicity.degrees()) {
    for (auto& part : harmonic_decompose(rd.multiplicity.homogeneous_part(degree))) rd.parts.push_back(std::move(part));
  }
  return rd;
}

RadialCheck radial_check(const RadialDecomposition& rd, std::int64_t r2_max, unsigned threads) {
  if (r2_max < 0) throw DomainError("r2_max must be nonnegative");
  const GroupParams& g = rd.group;
  // lambda large enough that the counter covers r2_max
  const std::int64_t lambda = std::max<std::int64_t>(0, Integer(Integer(r2_max) - g.lambda_shift).get_si());
  const LatticeCounter counter(g, lambda, threads);

  RadialCheck out;
  out.r2_max = r2_max;
  out.radial_sums.assign(static_cast<std::size_t>(r2_max) + 1, Rational(0));
  for (const auto& part : rd.parts) {
    const auto table = shell_sum_table(part.component, r2_max, LatticeParity::all, threads);
    Integer kl;
    for (std::int64_t k = 0; k <= r2_max; ++k) {
      const Rational& s = table.values[static_cast<std::size_t>(k)];
      if (s == 0) continue;
      mpz_ui_pow_ui(kl.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(part.l));
      out.radial_sums[static_cast<std::size_t>(k)] += s * Rational(kl);
    }
  }
  for (std::size_t k = 1; k < out.radial_sums.size(); ++k) out.radial_sums[k] += out.radial_sums[k - 1];
  for (std::int64_t r2 = 0; r2 <= r2_max; ++r2) {
    out.lattice_sums.push_back(r2 <= counter.max_radius_squared() ? counter.ball_sum(r2) : Integer(-1));
    if (Rational(out.lattice_sums.back()) != out.radial_sums[static_cast<std::size_t>(r2)]) {
      if (out.first_mismatch < 0) out.first_mismatch = r2;
      ++out.mismatches;
    }
  }
  return out;
}

// ------------------------------------------------------------ error series

ErrorRow error_row(const LatticeCounter& counter, const SmoothMain& main, std::int64_t lambda, int digits) {
  ErrorRow row;
  row.lambda = lambda;
  row.count = counter.count(lambda);
  row.smooth = main.evaluate(lambda, digits);
  if (row.smooth.decimal_exponent() > digits - 12) {
    throw PrecisionError("smooth term at lambda=" + std::to_string(lambda) + " has " +
                         std::to_string(row.smooth.decimal_exponent()) + " integer digits; " +
                         std::to_string(digits) + " digits of precision is not enough");
  }
  row.error = BigFloat(row.count, digits) - row.smooth;
  return row;
}

ErrorSeries error_series(const GroupParams& g, std::int64_t lambda_max, std::int64_t step, int digits,
                         unsigned threads) {
  if (lambda_max < 1) throw DomainError("lambda_max must be at least 1");
  if (step < 1) throw DomainError("step must be at least 1");
  const LatticeCounter counter(g, lambda_max, threads);
  const SmoothMain main = smooth_main(g);
  ErrorSeries series;
  series.group = g;
  series.digits = digits;
  for (std::int64_t lambda = step; lambda <= lambda_max; lambda += step) {
    series.rows.push_back(error_row(counter, main, lambda, digits));
  }
  return series;
}

// ------------------------------------------------------------ envelope fit

namespace {

struct WindowAcc {
  std::int64_t points = 0;
  BigFloat sup;
  long ulp_exponent = std::numeric_limits<long>::min() / 2;  // largest decimal ulp exponent seen (series only)
  bool any = false;
};

EnvelopeFit fit_windows(const std::map<int, WindowAcc>& windows) {
  EnvelopeFit fit;
  for (const auto& [j, w] : windows) {
    if (!w.any || w.sup.is_zero()) continue;
    EnvelopeWindow win;
    win.j = j;
    win.points = w.points;
    win.log_mid = std::log(1.5 * std::ldexp(1.0, j));
    win.log_sup = log(w.sup).to_double();
    fit.windows.push_back(win);
  }
  if (fit.windows.size() < 4) {
    throw InsufficientData("envelope fit needs at least 4 nonzero dyadic windows, got " +
                           std::to_string(fit.windows.size()));
  }
  const double count = static_cast<double>(fit.windows.size());
  double sx = 0, sy = 0;
  for (const auto& w : fit.windows) {
    sx += w.log_mid;
    sy += w.log_sup;
  }
  const double mx = sx / count, my = sy / count;
  double sxx = 0, sxy = 0;
  for (const auto& w : fit.windows) {
    sxx += (w.log_mid - mx) * (w.log_mid - mx);
    sxy += (w.log_mid - mx) * (w.log_sup - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (const auto& w : fit.windows) {
    const double r = w.log_sup - (fit.intercept + fit.slope * w.log_mid);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / count);
  return fit;
}

int window_of(std::int64_t t) {
  int j = 0;
  while ((std::int64_t{2} << j) <= t) ++j;
  return j;
}

}  // namespace

EnvelopeFit envelope_fit(std::span<const EnvelopePoint> points, int first_window) {
  std::map<int, WindowAcc> windows;
  for (const auto& p : points) {
    if (p.t < 1) continue;
    const int j = window_of(p.t);
    if (j < first_window) continue;
    auto& w = windows[j];
    ++w.points;
    const BigFloat mag = abs(p.magnitude);
    if (!w.any || mag > w.sup) w.sup = mag;
    w.any = true;
  }
  return fit_windows(windows);
}

EnvelopeFit envelope_fit(const ErrorSeries& series, int first_window) {
  std::map<int, WindowAcc> windows;
  for (const auto& row : series.rows) {
    if (row.lambda < 1) continue;
    const int j = window_of(row.lambda);
    if (j < first_window) continue;
    auto& w = windows[j];
    ++w.points;
    const BigFloat mag = abs(row.error);
    if (!w.any || mag > w.sup) w.sup = mag;
    w.ulp_exponent = std::max(w.ulp_exponent, row.smooth.decimal_exponent() - series.digits);
    w.any = true;
  }
  for (const auto& [j, w] : windows) {
    if (!w.any || w.sup.is_zero()) continue;
    if (w.sup.decimal_exponent() <= w.ulp_exponent + 10) {
      throw PrecisionError("error envelope in window " + std::to_string(j) +
                           " is within 10^10 ulp of the smooth term; raise --digits");
    }
  }
  return fit_windows(windows);
}

EnvelopeFit envelope_fit_squared(std::span<const EnvelopePoint> points, int first_window) {
  std::map<int, WindowAcc> windows;
  for (const auto& p : points) {
    if (p.t < 1) continue;
    const int j = window_of(p.t) / 2;
    if (j < first_window) continue;
    auto& w = windows[j];
    ++w.points;
    const BigFloat mag = abs(p.magnitude);
    if (!w.any || mag > w.sup) w.sup = mag;
    w.any = true;
  }
  return fit_windows(windows);
}

EnvelopeFit average_envelope_fit(int n, std::int64_t r_max, LatticeParity parity, int digits, unsigned threads) {
  if (n < 1) throw DomainError("dimension must be positive");
  if (r_max < 1) throw DomainError("R_max must be at least 1");
  const std::int64_t x_max = r_max * r_max;
  const auto table = rep_table(n, x_max, parity, threads);
  const BigFloat constant = average_constant(n, parity).evaluate(digits);
  std::vector<EnvelopePoint> points;
  points.reserve(2 * static_cast<std::size_t>(x_max));
  Integer below = table.values[0];
  for (std::int64_t x = 1; x <= x_max; ++x) {
    const Integer after = below + table.values[static_cast<std::size_t>(x)];
    // C x^{n/2}
    Integer x_pow;
    mpz_ui_pow_ui(x_pow.get_mpz_t(), static_cast<unsigned long>(x), static_cast<unsigned long>(n / 2));
    BigFloat main = constant * Rational(x_pow);
    if (n % 2 != 0) main *= sqrt(Rational(x), digits);
    points.push_back({x, abs(BigFloat(after, digits) - main)});
    // left limit as R^2 rises to x, which lies in the window of x - 1
    points.push_back({x - 1, abs(BigFloat(below, digits) - main)});
    below = after;
  }
  return envelope_fit_squared(points);
}

nlohmann::json fit_to_json(const EnvelopeFit& fit) {
  auto windows = nlohmann::json::array();
  for (const auto& w : fit.windows) {
    windows.push_back({{"j", w.j}, {"points", w.points}, {"log_mid", w.log_mid}, {"log_sup", w.log_sup}});
  }
  return {{"slope", fit.slope}, {"intercept", fit.intercept}, {"residual", fit.residual}, {"windows", windows}};
}

}  // namespace weyl
