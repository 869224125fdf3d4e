#include "weyl/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "weyl/errors.hpp"

namespace weyl {

MultiPoly::MultiPoly(int n_vars) : n_vars_(n_vars) {
  if (n_vars < 1) throw DomainError("polynomial needs at least one variable");
}

MultiPoly MultiPoly::constant(int n_vars, const Rational& c) {
  MultiPoly p(n_vars);
  p.add_term(Exponents(static_cast<std::size_t>(n_vars), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int n_vars, int index) {
  if (index < 1 || index > n_vars) throw DomainError("variable index out of range");
  MultiPoly p(n_vars);
  Exponents e(static_cast<std::size_t>(n_vars), 0);
  e[static_cast<std::size_t>(index - 1)] = 1;
  p.add_term(e, 1);
  return p;
}

MultiPoly MultiPoly::norm_squared(int n_vars) {
  MultiPoly p(n_vars);
  for (int i = 0; i < n_vars; ++i) {
    Exponents e(static_cast<std::size_t>(n_vars), 0);
    e[static_cast<std::size_t>(i)] = 2;
    p.add_term(e, 1);
  }
  return p;
}

namespace {

int total_degree(const Exponents& e) { return static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)); }

}  // namespace

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

bool MultiPoly::is_homogeneous() const {
  const auto ds = degrees();
  return ds.size() <= 1;
}

std::vector<int> MultiPoly::degrees() const {
  std::vector<int> ds;
  for (const auto& [e, c] : terms_) ds.push_back(total_degree(e));
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  return ds;
}

MultiPoly MultiPoly::homogeneous_part(int degree) const {
  MultiPoly out(n_vars_);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) == degree) out.terms_.emplace(e, c);
  }
  return out;
}

void MultiPoly::add_term(const Exponents& e, Rational c) {
  if (e.size() != static_cast<std::size_t>(n_vars_)) throw DomainError("exponent vector has wrong length");
  c.canonicalize();
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational MultiPoly::coefficient(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::check_arity(const MultiPoly& other) const {
  if (other.n_vars_ != n_vars_) throw DomainError("polynomials have different numbers of variables");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  check_arity(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
  check_arity(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_arity(b);
  MultiPoly out(a.n_vars_);
  Exponents e(static_cast<std::size_t>(a.n_vars_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result = constant(n_vars_, 1);
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != static_cast<std::size_t>(n_vars_)) throw DomainError("point has wrong dimension");
  Rational sum = 0;
  Rational powq;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      mpz_pow_ui(powq.get_num_mpz_t(), point[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(powq.get_den_mpz_t(), point[i].get_den_mpz_t(), e[i]);
      t *= powq;
    }
    sum += t;
  }
  return sum;
}

Rational MultiPoly::evaluate(std::span<const std::int64_t> point) const {
  if (point.size() != static_cast<std::size_t>(n_vars_)) throw DomainError("point has wrong dimension");
  Rational sum = 0;
  Integer p;
  for (const auto& [e, c] : terms_) {
    Integer t = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(point[i] < 0 ? -point[i] : point[i]), e[i]);
      if (point[i] < 0 && (e[i] & 1u)) p = -p;
      t *= p;
    }
    sum += c * t;
  }
  return sum;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  // highest total degree first, then reverse-lexicographic exponents
  std::vector<std::pair<Exponents, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    const int da = total_degree(a.first), db = total_degree(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::string out;
  for (const auto& [e, c] : ordered) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coeff;
    if (mag.get_den() != 1) coeff = "(" + weyl::to_string(mag) + ")";
    else coeff = mag.get_num().get_str();
    std::string term;
    if (mono.empty()) term = coeff;
    else if (mag == 1) term = mono;
    else term = coeff + "*" + mono;
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out;
}

// ------------------------------------------------------------------ parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, int n_vars) : text_(text), n_vars_(n_vars) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Integer uint() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected unsigned integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  MultiPoly expr() {
    MultiPoly sum(n_vars_);
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    MultiPoly t = term();
    sum += negative ? -t : t;
    for (;;) {
      if (accept('+')) sum += term();
      else if (accept('-')) sum -= term();
      else break;
    }
    return sum;
  }

  bool starts_factor() {
    const char c = peek();
    return c == 'x' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
  }

  MultiPoly term() {
    MultiPoly prod = factor();
    for (;;) {
      if (accept('*')) {
        prod = prod * factor();
      } else if (starts_factor()) {
        prod = prod * factor();
      } else {
        break;
      }
    }
    return prod;
  }

  // '(' int '/' uint ')' if it matches, without consuming otherwise
  bool try_paren_rational(Rational& out) {
    const auto save = pos_;
    ++pos_;  // '('
    bool negative = false;
    if (accept('-')) negative = true;
    skip_ws();
    if (!(pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))) {
      pos_ = save;
      return false;
    }
    const Integer num = uint();
    if (!accept('/')) {
      pos_ = save;
      return false;
    }
    skip_ws();
    if (!(pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))) {
      pos_ = save;
      return false;
    }
    const Integer den = uint();
    if (!accept(')')) {
      pos_ = save;
      return false;
    }
    if (den == 0) fail("zero denominator");
    out = make_rational(negative ? Integer(-num) : num, den);
    return true;
  }

  MultiPoly factor() {
    const char c = peek();
    if (c == '(') {
      Rational q;
      if (try_paren_rational(q)) return MultiPoly::constant(n_vars_, q);
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return power(inner);
    }
    if (c == 'x') {
      const auto at = pos_;
      ++pos_;
      const Integer idx = uint();
      if (idx < 1 || idx > n_vars_) {
        pos_ = at;
        fail("variable x" + idx.get_str() + " out of range (n_vars=" + std::to_string(n_vars_) + ")");
      }
      return power(MultiPoly::variable(n_vars_, static_cast<int>(idx.get_si())));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = uint();
      if (accept('/')) {
        const Integer den = uint();
        if (den == 0) fail("zero denominator");
        return MultiPoly::constant(n_vars_, make_rational(num, den));
      }
      return MultiPoly::constant(n_vars_, Rational(num));
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  MultiPoly power(const MultiPoly& base) {
    if (!accept('^')) return base;
    const Integer k = uint();
    if (k > 4096) fail("exponent too large");
    return base.pow(static_cast<unsigned>(k.get_ui()));
  }

  std::string_view text_;
  int n_vars_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, int n_vars) {
  if (n_vars < 1) throw DomainError("n_vars must be positive");
  return Parser(text, n_vars).parse();
}

// --------------------------------------------------------------- calculus

MultiPoly derivative(const MultiPoly& p, int var_index) {
  const auto i = static_cast<std::size_t>(var_index - 1);
  MultiPoly out(p.n_vars());
  for (const auto& [e, c] : p.terms()) {
    if (e[i] == 0) continue;
    Exponents f = e;
    f[i] -= 1;
    out.add_term(f, c * e[i]);
  }
  return out;
}

MultiPoly laplacian(const MultiPoly& p) {
  MultiPoly out(p.n_vars());
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 2) continue;
      Exponents f = e;
      f[i] -= 2;
      out.add_term(f, c * (e[i] * (e[i] - 1)));
    }
  }
  return out;
}

HarmonicDecomposition harmonic_decompose(const MultiPoly& p) {
  if (!p.is_homogeneous()) throw DomainError("harmonic decomposition needs a homogeneous polynomial");
  HarmonicDecomposition parts;
  if (p.is_zero()) return parts;
  const int n = p.n_vars();
  const int g = p.degree();
  const MultiPoly r2 = MultiPoly::norm_squared(n);

  // Peel off the top radial level first. If the remainder only holds levels
  // <= l, then Delta^l kills every level below l and maps
  // ||x||^{2l} H (deg H = g - 2l) to alpha_l * H with
  // alpha_l = prod_{i=1..l} 2i (n + 2i - 2 + 2 deg H).
  MultiPoly rest = p;
  for (int l = g / 2; l >= 0; --l) {
    MultiPoly top = rest;
    for (int i = 0; i < l; ++i) top = laplacian(top);
    if (top.is_zero()) continue;
    const int deg_h = g - 2 * l;
    Integer alpha = 1;
    for (int i = 1; i <= l; ++i) alpha *= 2 * i * (n + 2 * i - 2 + 2 * deg_h);
    top *= Rational(1, 1) / Rational(alpha);
    rest -= r2.pow(static_cast<unsigned>(l)) * top;
    parts.push_back({l, std::move(top)});
  }
  if (!rest.is_zero()) throw std::logic_error("harmonic decomposition left a remainder");
  std::reverse(parts.begin(), parts.end());
  return parts;
}

MultiPoly reconstruct(const HarmonicDecomposition& parts, int n_vars) {
  const MultiPoly r2 = MultiPoly::norm_squared(n_vars);
  MultiPoly out(n_vars);
  for (const auto& part : parts) out += r2.pow(static_cast<unsigned>(part.l)) * part.component;
  return out;
}

// ------------------------------------------------------------- integration

namespace {

Integer double_factorial(long k) {
  Integer r = 1;
  for (long i = k; i > 1; i -= 2) r *= i;
  return r;
}

}  // namespace

Rational sphere_integral(const MultiPoly& p, int n) {
  if (p.n_vars() != n) throw DomainError("polynomial arity does not match sphere dimension");
  Rational total = 0;
  for (const auto& [e, c] : p.terms()) {
    if (std::any_of(e.begin(), e.end(), [](std::uint32_t k) { return k % 2 != 0; })) continue;
    Integer num = 1;
    long half = 0;
    for (const auto k : e) {
      num *= double_factorial(static_cast<long>(k) - 1);
      half += k / 2;
    }
    Integer den = 1;
    for (long j = 0; j < half; ++j) den *= n + 2 * j;
    total += c * make_rational(num, den);
  }
  return total;
}

ExactValue sphere_volume(int n) {
  if (n < 1) throw DomainError("sphere dimension must be positive");
  if (n % 2 == 0) {
    Integer fact = 1;
    for (int i = 2; i < n / 2; ++i) fact *= i;
    return ExactValue::pi_power(static_cast<unsigned>(n / 2), make_rational(2, fact));
  }
  Integer two_pow = 1;
  two_pow <<= static_cast<unsigned>((n + 1) / 2);
  return ExactValue::pi_power(static_cast<unsigned>((n - 1) / 2), make_rational(two_pow, double_factorial(n - 2)));
}

ExactValue ball_volume(int n) { return sphere_volume(n) * ExactValue(Rational(1, static_cast<unsigned long>(n))); }

BallIntegral ball_integral(const MultiPoly& p, int n) {
  if (!p.is_homogeneous()) throw DomainError("ball integral needs a homogeneous polynomial");
  const int g = std::max(p.degree(), 0);
  BallIntegral out;
  out.power = n + g;
  out.coefficient = sphere_volume(n) * ExactValue(sphere_integral(p, n) / Rational(n + g));
  return out;
}

MultiPoly substitute_diag(const MultiPoly& p, std::span<const std::int64_t> a) {
  if (a.size() != static_cast<std::size_t>(p.n_vars())) throw DomainError("diagonal has wrong length");
  MultiPoly out(p.n_vars());
  for (const auto& [e, c] : p.terms()) {
    Integer scale = 1;
    Integer t;
    for (std::size_t i = 0; i < e.size(); ++i) {
      mpz_pow_ui(t.get_mpz_t(), Integer(a[i]).get_mpz_t(), e[i]);
      scale *= t;
    }
    out.add_term(e, c * scale);
  }
  return out;
}

}  // namespace weyl
