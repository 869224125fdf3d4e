#include "weyl/lowrank.hpp"

#include <algorithm>

#include "weyl/errors.hpp"
#include "weyl/shells.hpp"

namespace weyl {

namespace {

Integer isqrt(const Integer& v) { return Integer(sqrt(v)); }

Integer floor_of(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

Rational eval(const UniPoly& p, const Rational& y) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * y + *it;
  return acc;
}

UniPoly antiderivative(const UniPoly& p) {
  UniPoly out(p.size() + 1, Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i] / Rational(static_cast<long>(i + 1));
  return out;
}

UniPoly derivative(const UniPoly& p) {
  if (p.size() <= 1) return {Rational(0)};
  UniPoly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * Rational(static_cast<long>(i));
  return out;
}

/// p(y) * (y - c)
UniPoly times_linear(const UniPoly& p, const Rational& c) {
  UniPoly out(p.size() + 1, Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i + 1] += p[i];
    out[i] -= c * p[i];
  }
  return out;
}

/// K(j) = int_0^1 f(j + t) (t - 1/2) dt as a polynomial in j.
UniPoly unit_piece_kernel(const UniPoly& f) {
  UniPoly out(std::max<std::size_t>(f.size(), 1), Rational(0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    Integer binom = 1;
    for (std::size_t r = 0; r <= i; ++r) {
      // int_0^1 t^r (t - 1/2) dt
      Rational kappa = Rational(1, static_cast<unsigned long>(r + 2)) - Rational(1, static_cast<unsigned long>(2 * (r + 1)));
      kappa.canonicalize();
      out[i - r] += f[i] * Rational(binom) * kappa;
      binom = binom * static_cast<long>(i - r) / static_cast<long>(r + 1);
    }
  }
  return out;
}

/// int over [lo, hi] of f(y) (y - j - 1/2) dy, for [lo, hi] inside [j, j+1].
Rational piece(const UniPoly& f, const Integer& j, const Rational& lo, const Rational& hi) {
  const UniPoly h = antiderivative(times_linear(f, Rational(j) + Rational(1, 2)));
  return eval(h, hi) - eval(h, lo);
}

/// sum_{j=lo}^{hi-1} K(j)
Rational sum_unit_pieces(const UniPoly& kernel, const Integer& lo, const Integer& hi) {
  Rational total = 0;
  for (Integer j = lo; j < hi; ++j) total += eval(kernel, Rational(j));
  return total;
}

}  // namespace

Integer so2_count(std::int64_t lambda) {
  if (lambda < 0) throw DomainError("lambda must be nonnegative");
  return 2 * isqrt(Integer(lambda)) + 1;
}

Integer so3_count(std::int64_t lambda) {
  if (lambda < 0) throw DomainError("lambda must be nonnegative");
  // largest L with L(L+1) <= lambda
  const Integer L = (isqrt(4 * Integer(lambda) + 1) - 1) / 2;
  return (L + 1) * (2 * L + 1) * (2 * L + 3) / 3;
}

Rational sawtooth(const Rational& t) { return t - Rational(floor_of(t)) - Rational(1, 2); }

UniPoly to_unipoly(const MultiPoly& f) {
  if (f.n_vars() != 1) throw DomainError("expected a polynomial in one variable");
  UniPoly out(static_cast<std::size_t>(std::max(f.degree(), 0)) + 1, Rational(0));
  for (const auto& [e, c] : f.terms()) out[e[0]] = c;
  return out;
}

Rational integrate_times_sawtooth(const UniPoly& f, const Rational& a, const Rational& b) {
  if (b < a) return -integrate_times_sawtooth(f, b, a);
  if (a == b) return 0;
  const Integer fa = floor_of(a);
  const Integer fb = floor_of(b);
  if (fa == fb) return piece(f, fa, a, b);
  Rational total = 0;
  Integer first_full = fa;
  if (Rational(fa) != a) {
    total += piece(f, fa, a, Rational(fa + 1));
    first_full = fa + 1;
  }
  total += sum_unit_pieces(unit_piece_kernel(f), first_full, fb);
  if (Rational(fb) != b) total += piece(f, fb, Rational(fb), b);
  return total;
}

SoninResult sonin_sum(const MultiPoly& f, Rational a, Rational b) {
  a.canonicalize();
  b.canonicalize();
  if (b < a) throw DomainError("sonin_sum needs a <= b");
  const UniPoly p = to_unipoly(f);
  SoninResult out;
  out.lhs = 0;
  for (Integer k = floor_of(a) + 1; k <= floor_of(b); ++k) out.lhs += eval(p, Rational(k));
  const UniPoly anti = antiderivative(p);
  out.rhs = sawtooth(a) * eval(p, a) - sawtooth(b) * eval(p, b) + (eval(anti, b) - eval(anti, a)) +
            integrate_times_sawtooth(derivative(p), a, b);
  return out;
}

// ------------------------------------------------------------------- split

namespace {

/// Value p(Y) with Y = sqrt(s): rational part plus coefficient of Y.
struct Surd {
  Rational rational;
  Rational root_coeff;
};

Surd eval_at_root(const UniPoly& p, const Integer& s) {
  Surd out{0, 0};
  Integer s_pow = 1;
  for (std::size_t i = 0; i < p.size(); i += 2) {
    out.rational += p[i] * Rational(s_pow);
    if (i + 1 < p.size()) out.root_coeff += p[i + 1] * Rational(s_pow);
    s_pow *= s;
  }
  return out;
}

}  // namespace

TSplit t_split(std::int64_t lambda, int digits) {
  if (lambda < 0) throw DomainError("lambda must be nonnegative");
  const int work = digits + 20;
  const Integer r2 = Integer(lambda) + 1;

  // exact rational parts and the sqrt(s_x) parts of T1, T2, T3
  Rational q1 = 0, q2 = 0, q3 = 0;
  BigFloat f1(work), f2(work), f3(work);

  for (Integer x = 0; 2 * x * x <= r2; ++x) {
    const Rational w = x == 0 ? Rational(1) : Rational(2);
    const Integer s = r2 - x * x;
    const Integer J = isqrt(s);  // floor(Y)
    const BigFloat Y = sqrt(BigFloat(s, work));
    const Rational x2 = Rational(x * x);

    // m(x, y) = x^4 - 2 x^2 y^2 + y^4 and d/dy m = 4y^3 - 4x^2 y
    const UniPoly m = {x2 * x2, 0, -2 * x2, 0, 1};
    const UniPoly dm = {0, -4 * x2, 0, 4};

    // T1: int_x^Y m dy
    const UniPoly m_anti = antiderivative(m);
    const Surd at_y = eval_at_root(m_anti, s);
    q1 += w * (at_y.rational - eval(m_anti, Rational(x)));
    f1 += Y * Rational(w * at_y.root_coeff);

    // T2: -(R^2 - 2x^2)^2 psi(Y),  psi(Y) = Y - J - 1/2
    const Rational amp = Rational((r2 - 2 * x * x) * (r2 - 2 * x * x));
    q2 += w * amp * (Rational(J) + Rational(1, 2));
    f2 -= Y * Rational(w * amp);

    // T3: unit pieces [j, j+1] for x <= j < J, then [J, Y]
    q3 += w * sum_unit_pieces(unit_piece_kernel(dm), x, J);
    const UniPoly tail = antiderivative(times_linear(dm, Rational(J) + Rational(1, 2)));
    const Surd tail_y = eval_at_root(tail, s);
    q3 += w * (tail_y.rational - eval(tail, Rational(J)));
    f3 += Y * Rational(w * tail_y.root_coeff);
  }

  TSplit out;
  out.lambda = lambda;
  out.t1 = f1 + q1;
  out.t2 = f2 + q2;
  out.t3 = f3 + q3;
  out.count = count_lattice(group_params(4), lambda, 1);
  out.residual = out.t1 + out.t2 + out.t3 - BigFloat(out.count, work);
  out.t3_over_r4 = out.t3 / Rational(r2 * r2);
  return out;
}

// -------------------------------------------------------------- majorants

BigFloat TrigPolynomial::evaluate(const Rational& x, int digits) const {
  const BigFloat two_pi_x = BigFloat::pi(digits) * (Rational(2) * x);
  BigFloat c1(digits), s1(digits);
  mpfr_sin_cos(s1.get(), c1.get(), two_pi_x.get(), MPFR_RNDN);
  BigFloat sum(constant, digits);
  BigFloat c = c1, s = s1;
  for (int m = 1; m <= degree; ++m) {
    sum += c * cos_coeffs[static_cast<std::size_t>(m - 1)] + s * sin_coeffs[static_cast<std::size_t>(m - 1)];
    BigFloat next_c = c * c1 - s * s1;
    s = s * c1 + c * s1;
    c = std::move(next_c);
  }
  return sum;
}

BigFloat TrigPolynomial::coefficient_abs(int m, int digits) const {
  if (m == 0) return abs(BigFloat(constant, digits));
  const auto i = static_cast<std::size_t>(std::abs(m) - 1);
  if (std::abs(m) > degree) return BigFloat(digits);
  BigFloat c(cos_coeffs[i], digits);
  const BigFloat& s = sin_coeffs[i];
  return sqrt(c * c + s * s) / Rational(2);
}

PsiMajorants psi_majorants(int M, int digits) {
  if (M < 1) throw DomainError("majorant degree must be at least 1");
  const int work = digits + 10;
  const BigFloat pi = BigFloat::pi(work);
  const Rational h = Rational(1, static_cast<unsigned long>(M + 1));
  PsiMajorants q;
  for (TrigPolynomial* t : {&q.plus, &q.minus}) {
    t->degree = M;
    t->cos_coeffs.reserve(static_cast<std::size_t>(M));
    t->sin_coeffs.reserve(static_cast<std::size_t>(M));
  }
  // Fejer kernel F_M(x) = sum_{|m|<=M} (1 - |m|/(M+1)) e(mx) over 2M+2
  q.plus.constant = Rational(1, static_cast<unsigned long>(2 * M + 2));
  q.minus.constant = -q.plus.constant;
  for (int m = 1; m <= M; ++m) {
    Rational c(M + 1 - m, static_cast<unsigned long>((M + 1) * (M + 1)));
    c.canonicalize();
    // Vaaler: -J(u) sin(2 pi m x) / (pi m), J(u) = pi u (1-u) cot(pi u) + u
    const Rational u = Rational(m) * h;
    BigFloat pu = pi * u;
    BigFloat J = pu * (Rational(1) - u) * cot(pu) + u;
    BigFloat s = -(J / (pi * Rational(m)));
    q.plus.cos_coeffs.push_back(c);
    q.minus.cos_coeffs.push_back(-c);
    q.plus.sin_coeffs.push_back(s);
    q.minus.sin_coeffs.push_back(s);
  }
  return q;
}

MajorantGridCheck check_majorants(const PsiMajorants& q, std::int64_t points, int digits) {
  if (points < 1) throw DomainError("grid needs at least one point");
  const int M = q.plus.degree;
  const auto mm = static_cast<std::size_t>(M);
  const BigFloat tol = pow(BigFloat(10, digits), 10 - digits);

  // the two polynomials share the sine part; evaluate the sine and cosine
  // sums once per point with an in-place rotation recurrence
  std::vector<BigFloat> sin_c, cos_c;
  for (std::size_t i = 0; i < mm; ++i) {
    BigFloat s(digits);
    mpfr_set(s.get(), q.plus.sin_coeffs[i].get(), MPFR_RNDN);
    sin_c.push_back(std::move(s));
    cos_c.emplace_back(q.plus.cos_coeffs[i], digits);
  }
  const BigFloat two_pi = BigFloat::pi(digits) * Rational(2);
  BigFloat angle(digits), c1(digits), s1(digits), c(digits), s(digits), t(digits), u(digits);
  BigFloat sin_sum(digits), cos_sum(digits);
  const BigFloat a0(q.plus.constant, digits);

  std::vector<BigFloat> plus_values;
  std::vector<BigFloat> minus_values;
  plus_values.reserve(static_cast<std::size_t>(points));
  minus_values.reserve(static_cast<std::size_t>(points));

  MajorantGridCheck out;
  out.points = points;
  BigFloat gap_sum(digits);
  for (std::int64_t i = 0; i < points; ++i) {
    const Rational x = make_rational(i, points);
    mpfr_mul_q(angle.get(), two_pi.get(), Rational(x).get_mpq_t(), MPFR_RNDN);
    mpfr_sin_cos(s1.get(), c1.get(), angle.get(), MPFR_RNDN);
    mpfr_set(c.get(), c1.get(), MPFR_RNDN);
    mpfr_set(s.get(), s1.get(), MPFR_RNDN);
    mpfr_set_zero(sin_sum.get(), 1);
    mpfr_set_zero(cos_sum.get(), 1);
    for (std::size_t m = 0; m < mm; ++m) {
      mpfr_fma(sin_sum.get(), s.get(), sin_c[m].get(), sin_sum.get(), MPFR_RNDN);
      mpfr_fma(cos_sum.get(), c.get(), cos_c[m].get(), cos_sum.get(), MPFR_RNDN);
      // (c, s) <- (c c1 - s s1, s c1 + c s1)
      mpfr_mul(t.get(), c.get(), c1.get(), MPFR_RNDN);
      mpfr_fms(t.get(), s.get(), s1.get(), t.get(), MPFR_RNDN);
      mpfr_neg(t.get(), t.get(), MPFR_RNDN);
      mpfr_mul(u.get(), s.get(), c1.get(), MPFR_RNDN);
      mpfr_fma(s.get(), c.get(), s1.get(), u.get(), MPFR_RNDN);
      mpfr_swap(c.get(), t.get());
    }
    BigFloat fejer = cos_sum + a0;  // (F_M / (2M+2))(x)
    BigFloat plus = sin_sum + fejer;
    BigFloat minus = sin_sum - fejer;
    const BigFloat psi(sawtooth(x), digits);
    if (plus < psi - tol || minus > psi + tol) ++out.violations;
    BigFloat gap = plus - minus;
    if (i == 0 || gap > out.max_gap) out.max_gap = gap;
    gap_sum += gap;
    plus_values.push_back(std::move(plus));
    minus_values.push_back(std::move(minus));
  }
  out.mean_gap = gap_sum / Rational(points);
  for (std::int64_t i = 0; i < points; ++i) {
    const auto mirror = static_cast<std::size_t>((points - i) % points);
    const BigFloat diff = abs(minus_values[static_cast<std::size_t>(i)] + plus_values[mirror]);
    if (diff > tol) ++out.reflection_failures;
  }
  for (const TrigPolynomial* poly : {&q.plus, &q.minus}) {
    if (abs(BigFloat(poly->constant, digits)) > BigFloat(Rational(1, static_cast<unsigned long>(M + 1)), digits)) {
      ++out.coefficient_failures;
    }
    for (int m = 1; m <= M; ++m) {
      if (poly->coefficient_abs(m, digits) > BigFloat(Rational(1, static_cast<unsigned long>(m)), digits)) {
        ++out.coefficient_failures;
      }
    }
  }
  return out;
}

// --------------------------------------------------------- exponent pairs

ExponentPairResult exponent_pair_calc(ExponentPair p) {
  p.alpha.canonicalize();
  p.beta.canonicalize();
  const Rational one_plus_alpha = Rational(1) + p.alpha;
  if (one_plus_alpha <= 0) throw DomainError("exponent pair needs 1 + alpha > 0");
  ExponentPairResult r;
  r.m_exponent = (Rational(1) - p.beta) / one_plus_alpha;
  r.t2_exponent = p.alpha * r.m_exponent + p.beta + Rational(4);
  r.weyl_deficit = Rational(3) - r.t2_exponent / Rational(2);
  r.degenerate = p.beta == 1;
  return r;
}

// ------------------------------------------------------------ r3 average

R3Fit r3_average_fit(std::int64_t r_max, int digits, unsigned threads) {
  if (r_max * r_max < (std::int64_t{1} << 14)) throw DomainError("r3 average fit needs R_max^2 >= 2^14");
  R3Fit fit;
  fit.all = average_envelope_fit(3, r_max, LatticeParity::all, digits, threads);
  fit.odd = average_envelope_fit(3, r_max, LatticeParity::odd, digits, threads);
  return fit;
}

}  // namespace weyl
