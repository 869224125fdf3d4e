#pragma once

// Exact integers and rationals (GMP), high-precision binary floats (MPFR),
// and ExactValue: finite sums of rational multiples of integer powers of pi.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace weyl {

using Integer = mpz_class;
using Rational = mpq_class;

constexpr int kDefaultDigits = 80;

/// Default decimal precision: WEYL_LAB_DIGITS if set and valid, else 80.
int default_digits();

/// Reduced p/q. Throws DomainError when q == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Accepts "p", "-p", "p/q". Throws ParseError.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer to_integer(__int128 v);

/// RAII wrapper around mpfr_t. Each value carries its own precision;
/// binary operations round to the larger precision of the two operands.
class BigFloat {
 public:
  explicit BigFloat(int digits = default_digits());
  BigFloat(long value, int digits);
  BigFloat(const Integer& value, int digits);
  BigFloat(const Rational& value, int digits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat pi(int digits);
  static BigFloat euler_gamma(int digits);

  int digits() const;
  mpfr_prec_t bits() const { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  /// Base-10 exponent e with 10^(e-1) <= |x| < 10^e; 0 for zero.
  long decimal_exponent() const;

  /// Fixed-point rendering with `significant` significant digits,
  /// round-half-even, no locale formatting.
  std::string to_fixed(int significant) const;
  /// d.ddd...e+XX with `significant` significant digits.
  std::string to_scientific(int significant) const;

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);
  BigFloat& operator+=(const Rational& rhs);
  BigFloat& operator-=(const Rational& rhs);
  BigFloat& operator*=(const Rational& rhs);
  BigFloat& operator/=(const Rational& rhs);

  friend BigFloat operator+(BigFloat lhs, const BigFloat& rhs) { return lhs += rhs; }
  friend BigFloat operator-(BigFloat lhs, const BigFloat& rhs) { return lhs -= rhs; }
  friend BigFloat operator*(BigFloat lhs, const BigFloat& rhs) { return lhs *= rhs; }
  friend BigFloat operator/(BigFloat lhs, const BigFloat& rhs) { return lhs /= rhs; }
  friend BigFloat operator+(BigFloat lhs, const Rational& rhs) { return lhs += rhs; }
  friend BigFloat operator-(BigFloat lhs, const Rational& rhs) { return lhs -= rhs; }
  friend BigFloat operator*(BigFloat lhs, const Rational& rhs) { return lhs *= rhs; }
  friend BigFloat operator/(BigFloat lhs, const Rational& rhs) { return lhs /= rhs; }
  BigFloat operator-() const;

  friend int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.value_, b.value_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return compare(a, b) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return compare(a, b) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return compare(a, b) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return compare(a, b) == 0; }

 private:
  struct BitsTag {};
  BigFloat(BitsTag, mpfr_prec_t bits);
  void raise_precision(mpfr_prec_t bits);

  mpfr_t value_;
};

mpfr_prec_t digits_to_bits(int digits);

BigFloat abs(BigFloat x);
BigFloat sqrt(BigFloat x);
BigFloat log(BigFloat x);
BigFloat exp(BigFloat x);
BigFloat cot(BigFloat x);
BigFloat pow(BigFloat x, long exponent);
/// sqrt of an exact rational at the given precision.
BigFloat sqrt(const Rational& q, int digits);

/// A finite formal sum of q_e * pi^e with exact rational q_e.
/// Zero-valued terms are never stored, so structural equality is value
/// equality.
class ExactValue {
 public:
  ExactValue() = default;
  ExactValue(const Rational& q);  // NOLINT: implicit q * pi^0
  ExactValue(long q) : ExactValue(Rational(q)) {}  // NOLINT

  static ExactValue pi_power(unsigned exponent, const Rational& coefficient = 1);

  const std::map<unsigned, Rational>& terms() const { return terms_; }
  Rational coefficient(unsigned exponent) const;
  bool is_zero() const { return terms_.empty(); }

  ExactValue& operator+=(const ExactValue& rhs);
  ExactValue& operator*=(const ExactValue& rhs);
  friend ExactValue operator+(ExactValue a, const ExactValue& b) { return a += b; }
  friend ExactValue operator*(const ExactValue& a, const ExactValue& b);
  friend bool operator==(const ExactValue&, const ExactValue&) = default;

  /// Each term is evaluated with pi at digits + 10 and the result rounded
  /// to `digits` decimal digits of precision.
  BigFloat evaluate(int digits) const;

  /// "1/24*pi" style, terms in increasing pi-exponent.
  std::string to_string() const;

 private:
  std::map<unsigned, Rational> terms_;
};

}  // namespace weyl
