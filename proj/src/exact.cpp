#include "weyl/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>

#include "weyl/errors.hpp"

namespace weyl {

int default_digits() {
  if (const char* env = std::getenv("WEYL_LAB_DIGITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 100000) return static_cast<int>(v);
  }
  return kDefaultDigits;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  auto strip_plus = [](std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return std::string(s);
  };
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!is_int(num)) throw ParseError("expected integer numerator in '" + std::string(text) + "'", 0);
  if (slash == std::string_view::npos) return Rational(Integer(strip_plus(num)));
  const auto den = text.substr(slash + 1);
  if (!is_int(den)) {
    throw ParseError("expected integer denominator in '" + std::string(text) + "'", slash + 1);
  }
  return make_rational(Integer(strip_plus(num)), Integer(strip_plus(den)));
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer to_integer(__int128 v) {
  const bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  const std::uint64_t words[2] = {static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(u >> 64)};
  Integer z;
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  if (negative) z = -z;
  return z;
}

// ---------------------------------------------------------------- BigFloat

mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(std::max(digits, 1) * 3.3219280948873623)) + 16;
}

BigFloat::BigFloat(BitsTag, mpfr_prec_t bits) { mpfr_init2(value_, bits); }

BigFloat::BigFloat(int digits) : BigFloat(BitsTag{}, digits_to_bits(digits)) { mpfr_set_zero(value_, 1); }

BigFloat::BigFloat(long value, int digits) : BigFloat(BitsTag{}, digits_to_bits(digits)) {
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const Integer& value, int digits) : BigFloat(BitsTag{}, digits_to_bits(digits)) {
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& value, int digits) : BigFloat(BitsTag{}, digits_to_bits(digits)) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) : BigFloat(BitsTag{}, other.bits()) {
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept : BigFloat(BitsTag{}, other.bits()) { mpfr_swap(value_, other.value_); }

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.bits());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::pi(int digits) {
  BigFloat r(digits);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::euler_gamma(int digits) {
  BigFloat r(digits);
  mpfr_const_euler(r.value_, MPFR_RNDN);
  return r;
}

int BigFloat::digits() const {
  return static_cast<int>(std::floor((bits() - 16) / 3.3219280948873623));
}

void BigFloat::raise_precision(mpfr_prec_t bits) {
  if (bits > this->bits()) mpfr_prec_round(value_, bits, MPFR_RNDN);
}

namespace {

struct GetStr {
  std::string digits;
  mpfr_exp_t exponent = 0;
  bool negative = false;
};

GetStr get_str(mpfr_srcptr x, int significant) {
  GetStr out;
  mpfr_exp_t e = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(std::max(significant, 1)), x, MPFR_RNDN),
      mpfr_free_str);
  std::string s(raw.get());
  if (!s.empty() && s[0] == '-') {
    out.negative = true;
    s.erase(0, 1);
  }
  out.digits = std::move(s);
  out.exponent = mpfr_zero_p(x) ? 1 : e;
  return out;
}

}  // namespace

long BigFloat::decimal_exponent() const {
  if (is_zero()) return 0;
  return static_cast<long>(get_str(value_, 3).exponent);
}

std::string BigFloat::to_fixed(int significant) const {
  if (!mpfr_number_p(value_)) return mpfr_nan_p(value_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
  const GetStr g = get_str(value_, significant);
  const auto len = static_cast<mpfr_exp_t>(g.digits.size());
  std::string out = g.negative ? "-" : "";
  if (is_zero()) {
    out = "0";
    if (significant > 1) out += "." + std::string(static_cast<std::size_t>(significant - 1), '0');
    return out;
  }
  if (g.exponent <= 0) {
    out += "0." + std::string(static_cast<std::size_t>(-g.exponent), '0') + g.digits;
  } else if (g.exponent < len) {
    out += g.digits.substr(0, static_cast<std::size_t>(g.exponent)) + "." +
           g.digits.substr(static_cast<std::size_t>(g.exponent));
  } else {
    out += g.digits + std::string(static_cast<std::size_t>(g.exponent - len), '0');
  }
  return out;
}

std::string BigFloat::to_scientific(int significant) const {
  if (!mpfr_number_p(value_)) return to_fixed(significant);
  const GetStr g = get_str(value_, significant);
  std::string out = g.negative ? "-" : "";
  out += g.digits.substr(0, 1);
  if (g.digits.size() > 1) out += "." + g.digits.substr(1);
  const long e = is_zero() ? 0 : static_cast<long>(g.exponent) - 1;
  std::string exp_digits = std::to_string(e < 0 ? -e : e);
  if (exp_digits.size() < 2) exp_digits.insert(0, "0");
  out += (e < 0 ? "e-" : "e+") + exp_digits;
  return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  raise_precision(rhs.bits());
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  raise_precision(rhs.bits());
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  raise_precision(rhs.bits());
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  raise_precision(rhs.bits());
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator+=(const Rational& rhs) {
  mpfr_add_q(value_, value_, rhs.get_mpq_t(), MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const Rational& rhs) {
  mpfr_sub_q(value_, value_, rhs.get_mpq_t(), MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const Rational& rhs) {
  mpfr_mul_q(value_, value_, rhs.get_mpq_t(), MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const Rational& rhs) {
  mpfr_div_q(value_, value_, rhs.get_mpq_t(), MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

BigFloat abs(BigFloat x) {
  mpfr_abs(x.get(), x.get(), MPFR_RNDN);
  return x;
}

BigFloat sqrt(BigFloat x) {
  mpfr_sqrt(x.get(), x.get(), MPFR_RNDN);
  return x;
}

BigFloat log(BigFloat x) {
  mpfr_log(x.get(), x.get(), MPFR_RNDN);
  return x;
}

BigFloat exp(BigFloat x) {
  mpfr_exp(x.get(), x.get(), MPFR_RNDN);
  return x;
}

BigFloat cot(BigFloat x) {
  mpfr_cot(x.get(), x.get(), MPFR_RNDN);
  return x;
}

BigFloat pow(BigFloat x, long exponent) {
  mpfr_pow_si(x.get(), x.get(), exponent, MPFR_RNDN);
  return x;
}

BigFloat sqrt(const Rational& q, int digits) { return sqrt(BigFloat(q, digits)); }

// -------------------------------------------------------------- ExactValue

ExactValue::ExactValue(const Rational& q) {
  if (q != 0) terms_.emplace(0u, q);
}

ExactValue ExactValue::pi_power(unsigned exponent, const Rational& coefficient) {
  ExactValue v;
  if (coefficient != 0) v.terms_.emplace(exponent, coefficient);
  return v;
}

Rational ExactValue::coefficient(unsigned exponent) const {
  const auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

ExactValue& ExactValue::operator+=(const ExactValue& rhs) {
  for (const auto& [e, q] : rhs.terms_) {
    auto [it, inserted] = terms_.emplace(e, q);
    if (!inserted) {
      it->second += q;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

ExactValue operator*(const ExactValue& a, const ExactValue& b) {
  ExactValue out;
  for (const auto& [ea, qa] : a.terms_) {
    for (const auto& [eb, qb] : b.terms_) out += ExactValue::pi_power(ea + eb, qa * qb);
  }
  return out;
}

ExactValue& ExactValue::operator*=(const ExactValue& rhs) { return *this = *this * rhs; }

BigFloat ExactValue::evaluate(int digits) const {
  const int work = digits + 10;
  const BigFloat pi = BigFloat::pi(work);
  BigFloat sum(work);
  for (const auto& [e, q] : terms_) sum += pow(pi, static_cast<long>(e)) * q;
  BigFloat out(digits);
  mpfr_set(out.get(), sum.get(), MPFR_RNDN);
  return out;
}

std::string ExactValue::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, q] : terms_) {
    std::string term = weyl::to_string(q);
    if (e > 0) {
      const std::string pi = e == 1 ? "pi" : "pi^" + std::to_string(e);
      if (q == 1) term = pi;
      else if (q == -1) term = "-" + pi;
      else term += "*" + pi;
    }
    if (!out.empty()) out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
    else out = term;
  }
  return out;
}

}  // namespace weyl
