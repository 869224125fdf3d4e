#include "weyl/shells.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "weyl/errors.hpp"
#include "weyl/parallel.hpp"

namespace weyl {

LatticeParity parse_lattice_parity(const std::string& text) {
  if (text == "all") return LatticeParity::all;
  if (text == "odd") return LatticeParity::odd;
  throw DomainError("parity must be 'all' or 'odd', got '" + text + "'");
}

std::string to_string(LatticeParity p) { return p == LatticeParity::all ? "all" : "odd"; }

namespace {

std::int64_t isqrt(std::int64_t v) {
  if (v < 0) return -1;
  Integer r = sqrt(Integer(v));
  return r.get_si();
}

/// One coordinate of a lattice vector: value t >= 0 standing for +-t.
struct Root {
  std::int64_t t = 0;
  std::int64_t square = 0;
  int signs = 1;
};

std::vector<Root> coordinate_roots(std::int64_t k_max, LatticeParity parity) {
  std::vector<Root> roots;
  const std::int64_t top = isqrt(k_max);
  for (std::int64_t t = parity == LatticeParity::odd ? 1 : 0; t <= top; t += parity == LatticeParity::odd ? 2 : 1) {
    roots.push_back({t, t * t, t == 0 ? 1 : 2});
  }
  return roots;
}

struct Overflow {};

inline void mul_add(__int128& acc, __int128 w, __int128 a) {
  __int128 p;
  if (__builtin_mul_overflow(w, a, &p) || __builtin_add_overflow(acc, p, &acc)) throw Overflow{};
}

inline void mul_add(Integer& acc, const Integer& w, const Integer& a) {
  mpz_addmul(acc.get_mpz_t(), w.get_mpz_t(), a.get_mpz_t());
}

inline bool is_zero(const __int128& v) { return v == 0; }
inline bool is_zero(const Integer& v) { return v == 0; }

template <class Acc>
Acc root_weight(const Root& r, std::uint32_t e) {
  // (+t)^e + (-t)^e, or 0^e once
  if (r.t == 0) return e == 0 ? Acc(1) : Acc(0);
  if (e % 2 != 0) return Acc(0);
  Acc w = Acc(r.signs);
  for (std::uint32_t i = 0; i < e; ++i) {
    if constexpr (std::is_same_v<Acc, __int128>) {
      if (__builtin_mul_overflow(w, static_cast<__int128>(r.t), &w)) throw Overflow{};
    } else {
      w *= r.t;
    }
  }
  return w;
}

template <class Acc>
std::vector<Acc> first_coordinate(std::uint32_t e, std::int64_t k_max, LatticeParity parity) {
  std::vector<Acc> out(static_cast<std::size_t>(k_max) + 1, Acc(0));
  for (const auto& r : coordinate_roots(k_max, parity)) out[static_cast<std::size_t>(r.square)] = root_weight<Acc>(r, e);
  return out;
}

constexpr std::size_t kChunks = 64;

/// b[k] = sum_t w_e(t) a[k - t^2]
template <class Acc>
std::vector<Acc> convolve(const std::vector<Acc>& a, std::uint32_t e, std::int64_t k_max, LatticeParity parity,
                          unsigned threads) {
  const auto roots = coordinate_roots(k_max, parity);
  std::vector<Acc> weights;
  weights.reserve(roots.size());
  for (const auto& r : roots) weights.push_back(root_weight<Acc>(r, e));
  const auto size = static_cast<std::size_t>(k_max) + 1;
  const std::size_t chunk = (size + kChunks - 1) / kChunks;
  auto parts = map_slabs<std::vector<Acc>>(kChunks, threads, [&](std::size_t c) {
    const std::size_t lo = std::min(size, c * chunk);
    const std::size_t hi = std::min(size, lo + chunk);
    std::vector<Acc> out(hi - lo, Acc(0));
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (is_zero(weights[i])) continue;
      const auto sq = static_cast<std::size_t>(roots[i].square);
      for (std::size_t k = std::max(lo, sq); k < hi; ++k) {
        const Acc& src = a[k - sq];
        if (!is_zero(src)) mul_add(out[k - lo], weights[i], src);
      }
    }
    return out;
  });
  std::vector<Acc> b;
  b.reserve(size);
  for (auto& p : parts) b.insert(b.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  return b;
}

/// Shell sums of the monomial x^key for each key (all coordinates of a key
/// are exchangeable, so keys are sorted descending and share prefixes).
template <class Acc>
std::map<Exponents, std::vector<Acc>> monomial_tables(const std::vector<Exponents>& keys, std::int64_t k_max,
                                                      LatticeParity parity, unsigned threads) {
  std::map<Exponents, std::vector<Acc>> prefix;
  std::function<const std::vector<Acc>&(const Exponents&)> table = [&](const Exponents& key) -> const std::vector<Acc>& {
    if (auto it = prefix.find(key); it != prefix.end()) return it->second;
    std::vector<Acc> t;
    if (key.size() == 1) {
      t = first_coordinate<Acc>(key[0], k_max, parity);
    } else {
      const Exponents head(key.begin(), key.end() - 1);
      t = convolve<Acc>(table(head), key.back(), k_max, parity, threads);
    }
    return prefix.emplace(key, std::move(t)).first->second;
  };
  std::map<Exponents, std::vector<Acc>> out;
  for (const auto& key : keys) out.emplace(key, table(key));
  return out;
}

Exponents canonical_key(const Exponents& e) {
  Exponents k = e;
  std::sort(k.begin(), k.end(), std::greater<>());
  return k;
}

/// Integer tables for every canonical key, falling back to big integers
/// when 128-bit accumulation would overflow.
std::map<Exponents, std::vector<Integer>> integer_tables(const std::vector<Exponents>& keys, std::int64_t k_max,
                                                         LatticeParity parity, unsigned threads) {
  std::map<Exponents, std::vector<Integer>> out;
  try {
    auto fast = monomial_tables<__int128>(keys, k_max, parity, threads);
    for (auto& [key, values] : fast) {
      std::vector<Integer> big;
      big.reserve(values.size());
      for (const auto v : values) big.push_back(to_integer(v));
      out.emplace(key, std::move(big));
    }
  } catch (const Overflow&) {
    out = monomial_tables<Integer>(keys, k_max, parity, threads);
  }
  return out;
}

void require_nonnegative(std::int64_t k_max) {
  if (k_max < 0) throw DomainError("k_max must be nonnegative");
}

}  // namespace

ShellTable rep_table(int n, std::int64_t k_max, LatticeParity parity, unsigned threads) {
  if (n < 1) throw DomainError("dimension must be positive");
  require_nonnegative(k_max);
  const Exponents key(static_cast<std::size_t>(n), 0);
  auto tables = integer_tables({key}, k_max, parity, threads);
  return ShellTable{n, parity, k_max, std::move(tables.at(key))};
}

ShellSumTable shell_sum_table(const MultiPoly& p, std::int64_t k_max, LatticeParity parity, unsigned threads) {
  require_nonnegative(k_max);
  const int n = p.n_vars();
  // combine monomials that share a canonical key; odd exponents sum to zero
  std::map<Exponents, Rational> by_key;
  for (const auto& [e, c] : p.terms()) {
    if (std::any_of(e.begin(), e.end(), [](std::uint32_t k) { return k % 2 != 0; })) continue;
    by_key[canonical_key(e)] += c;
  }
  std::erase_if(by_key, [](const auto& kv) { return kv.second == 0; });
  Integer common = 1;
  std::vector<Exponents> keys;
  for (const auto& [key, c] : by_key) {
    keys.push_back(key);
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
  }
  ShellSumTable out{n, parity, k_max, p, std::vector<Rational>(static_cast<std::size_t>(k_max) + 1, Rational(0))};
  if (keys.empty()) return out;
  const auto tables = integer_tables(keys, k_max, parity, threads);
  std::vector<Integer> total(out.values.size(), Integer(0));
  for (const auto& [key, c] : by_key) {
    const Integer scaled = Integer(c * common);
    const auto& t = tables.at(key);
    for (std::size_t k = 0; k < total.size(); ++k) {
      if (t[k] != 0) mpz_addmul(total[k].get_mpz_t(), scaled.get_mpz_t(), t[k].get_mpz_t());
    }
  }
  for (std::size_t k = 0; k < total.size(); ++k) out.values[k] = make_rational(total[k], common);
  return out;
}

namespace {

/// Visits every m with sum a_i^2 m_i^2 = k, coordinates restricted to odd
/// values when requested.
void for_each_on_quadric(std::span<const std::int64_t> a, std::int64_t k, LatticeParity parity,
                         const std::function<void(const std::vector<std::int64_t>&)>& visit) {
  const std::size_t n = a.size();
  std::vector<std::int64_t> m(n, 0);
  std::function<void(std::size_t, std::int64_t)> descend = [&](std::size_t i, std::int64_t rest) {
    const std::int64_t a2 = a[i] * a[i];
    if (i + 1 == n) {
      if (rest % a2 != 0) return;
      const std::int64_t q = rest / a2;
      const std::int64_t t = isqrt(q);
      if (t * t != q) return;
      if (parity == LatticeParity::odd && t % 2 == 0) return;
      m[i] = t;
      visit(m);
      if (t != 0) {
        m[i] = -t;
        visit(m);
      }
      return;
    }
    const std::int64_t top = isqrt(rest / a2);
    for (std::int64_t t = -top; t <= top; ++t) {
      if (parity == LatticeParity::odd && t % 2 == 0) continue;
      m[i] = t;
      descend(i + 1, rest - a2 * t * t);
    }
  };
  if (k < 0 || n == 0) return;
  descend(0, k);
}

}  // namespace

Rational shell_sum(int n, std::int64_t k, const MultiPoly& p, LatticeParity parity) {
  if (p.n_vars() != n) throw DomainError("polynomial arity does not match dimension");
  const std::vector<std::int64_t> ones(static_cast<std::size_t>(n), 1);
  Rational total = 0;
  for_each_on_quadric(ones, k, parity, [&](const std::vector<std::int64_t>& m) { total += p.evaluate(std::span<const std::int64_t>(m)); });
  return total;
}

Rational shell_sum_form(std::span<const std::int64_t> a, std::int64_t k, const MultiPoly& p) {
  if (a.size() != static_cast<std::size_t>(p.n_vars())) throw DomainError("diagonal has wrong length");
  if (std::any_of(a.begin(), a.end(), [](std::int64_t v) { return v <= 0; })) {
    throw DomainError("diagonal entries must be positive");
  }
  Rational total = 0;
  for_each_on_quadric(a, k, LatticeParity::all,
                      [&](const std::vector<std::int64_t>& m) { total += p.evaluate(std::span<const std::int64_t>(m)); });
  return total;
}

// ------------------------------------------------------------ factorization

namespace {

constexpr unsigned long kSieveLimit = 1000000;

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<bool> composite(kSieveLimit + 1, false);
    std::vector<unsigned long> ps;
    for (unsigned long i = 2; i <= kSieveLimit; ++i) {
      if (composite[i]) continue;
      ps.push_back(i);
      for (unsigned long j = i * i; j <= kSieveLimit; j += i) composite[j] = true;
    }
    return ps;
  }();
  return primes;
}

/// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    const Integer cc = c;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](const Integer& v) {
      Integer t = v * v + cc;
      return Integer(t % n);
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs(x - y)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_large(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  const Integer d = pollard_rho(n);
  factor_large(d, out);
  factor_large(Integer(n / d), out);
}

}  // namespace

std::vector<std::pair<Integer, unsigned>> factorize(const Integer& k) {
  if (k < 1) throw DomainError("factorize needs a positive integer");
  std::map<Integer, unsigned> found;
  Integer rest = k;
  for (const auto p : small_primes()) {
    if (Integer(p) * p > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= p;
      ++found[Integer(p)];
    }
  }
  if (rest > 1) {
    if (rest <= Integer(kSieveLimit) * kSieveLimit) ++found[rest];
    else factor_large(rest, found);
  }
  return {found.begin(), found.end()};
}

Integer sigma(const Integer& k) {
  Integer s = 1;
  for (const auto& [p, e] : factorize(k)) {
    // (p^{e+1} - 1) / (p - 1)
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e + 1);
    s *= (pe - 1) / (p - 1);
  }
  return s;
}

Integer jacobi_r4(const Integer& k) {
  if (k < 1) throw DomainError("jacobi_r4 needs k >= 1");
  // divisors not divisible by 4 of 2^a m: odd ones and twice the odd ones
  Integer odd = k;
  unsigned a = 0;
  while (mpz_even_p(odd.get_mpz_t())) {
    odd /= 2;
    ++a;
  }
  return 8 * sigma(odd) * (a == 0 ? 1 : 3);
}

Integer carlitz_r4_odd(const Integer& k) {
  if (k < 1) throw DomainError("carlitz_r4_odd needs k >= 1");
  if (k % 8 != 4) return 0;
  return 16 * sigma(Integer(k / 4));
}

// ---------------------------------------------------------------- averages

ExactValue average_constant(int n, LatticeParity parity) {
  ExactValue c = ball_volume(n);
  if (parity == LatticeParity::odd) {
    Integer two_n = 1;
    two_n <<= static_cast<unsigned>(n);
    c *= ExactValue(make_rational(1, two_n));
  }
  return c;
}

std::vector<AverageRow> average_compare(int n, std::int64_t r_max, LatticeParity parity, int digits,
                                        unsigned threads) {
  if (n < 1) throw DomainError("dimension must be positive");
  if (r_max < 1) throw DomainError("R_max must be at least 1");
  const std::int64_t k_max = r_max * r_max;
  // cumulative counts of the (n-1)-dimensional lattice
  std::vector<Integer> lower(static_cast<std::size_t>(k_max) + 1, Integer(1));
  if (n > 1) {
    const auto t = rep_table(n - 1, k_max, parity, threads);
    Integer run = 0;
    for (std::size_t k = 0; k < lower.size(); ++k) {
      run += t.values[k];
      lower[k] = run;
    }
  }
  const auto roots = coordinate_roots(k_max, parity);
  const BigFloat constant = average_constant(n, parity).evaluate(digits);
  std::vector<AverageRow> rows;
  rows.reserve(static_cast<std::size_t>(r_max));
  for (std::int64_t r = 1; r <= r_max; ++r) {
    const std::int64_t r2 = r * r;
    Integer count = 0;
    for (const auto& root : roots) {
      if (root.square > r2) break;
      count += root.signs * lower[static_cast<std::size_t>(r2 - root.square)];
    }
    BigFloat main = constant * pow(BigFloat(r, digits), n);
    BigFloat diff = BigFloat(count, digits) - main;
    rows.push_back({r, std::move(count), std::move(main), std::move(diff)});
  }
  return rows;
}

BigFloat equidist_error(int n, std::int64_t k, const MultiPoly& p, int digits) {
  if (!p.is_homogeneous()) throw DomainError("equidistribution error needs a homogeneous polynomial");
  if (k < 0) throw DomainError("k must be nonnegative");
  const Rational count = shell_sum(n, k, MultiPoly::constant(n, 1));
  if (count == 0) throw DomainError("empty shell: r_" + std::to_string(n) + "(" + std::to_string(k) + ") = 0");
  const Rational s = shell_sum(n, k, p);
  const int nu = std::max(p.degree(), 0);
  BigFloat scale(Rational(Integer(count.get_num())), digits + 10);
  Integer kpow;
  mpz_ui_pow_ui(kpow.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(nu / 2));
  scale *= Rational(kpow);
  if (nu % 2 == 1) scale *= sqrt(BigFloat(Integer(k), digits + 10));
  BigFloat e = BigFloat(s, digits + 10) / scale - sphere_integral(p, n);
  BigFloat out(digits);
  mpfr_set(out.get(), e.get(), MPFR_RNDN);
  return out;
}

ExtremalRatio r4_extremal_ratio(int j, int digits) {
  if (j < 3) throw DomainError("extremal ratio needs at least 3 odd primes");
  Integer k = 1;
  int used = 0;
  for (const auto p : small_primes()) {
    if (p == 2) continue;
    if (used == j) break;
    k *= p;
    ++used;
  }
  if (used < j) throw DomainError("too many primes requested");
  ExtremalRatio out;
  out.k = k;
  out.r4 = jacobi_r4(k);
  const BigFloat kk(k, digits + 10);
  out.ratio = BigFloat(out.r4, digits + 10) / (kk * log(log(kk)));
  out.reference = BigFloat(48, digits + 10) * exp(BigFloat::euler_gamma(digits + 10)) /
                  pow(BigFloat::pi(digits + 10), 2);
  return out;
}

JumpCheck jump_check(int n, std::int64_t k_min, std::int64_t k_max, LatticeParity parity, int digits,
                     unsigned threads) {
  if (n <= 4) throw DomainError("jump check applies to n > 4");
  if (k_min < 1 || k_max < k_min) throw DomainError("empty k range");
  const auto table = rep_table(n, k_max, parity, threads);
  JumpCheck out;
  bool found = false;
  for (std::int64_t k = k_min; k <= k_max; ++k) {
    const Integer& r = table.values[static_cast<std::size_t>(k)];
    if (parity == LatticeParity::odd) {
      const std::int64_t diff = ((k - n) % 8 + 8) % 8;
      if (diff == 4 && r == 0) ++out.empty_mod4_classes;
      if (diff != 0) continue;
    }
    if (r == 0) continue;
    BigFloat denom = pow(BigFloat(k, digits), (n - 2) / 2);
    if (n % 2 == 1) denom *= sqrt(BigFloat(k, digits));
    BigFloat ratio = BigFloat(r, digits) / denom;
    ++out.shells_checked;
    if (!found || ratio < out.min_ratio) {
      out.min_ratio = std::move(ratio);
      out.argmin = k;
      found = true;
    }
  }
  if (!found) throw DomainError("no nonempty shell in range");
  return out;
}

}  // namespace weyl
