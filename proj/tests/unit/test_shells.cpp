#include <functional>
#include <random>

#include "doctest.h"
#include "weyl/errors.hpp"
#include "weyl/shells.hpp"

using namespace weyl;

namespace {

// Brute force over the box [-s, s]^n.
Rational brute_shell(int n, std::int64_t k, const MultiPoly& p, bool odd_only) {
  Rational total = 0;
  std::vector<std::int64_t> m(static_cast<std::size_t>(n), 0);
  const auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(k))) + 1;
  std::function<void(int, std::int64_t)> rec = [&](int i, std::int64_t used) {
    if (used > k) return;
    if (i == n) {
      if (used == k) total += p.evaluate(m);
      return;
    }
    for (std::int64_t t = -s; t <= s; ++t) {
      if (odd_only && t % 2 == 0) continue;
      m[static_cast<std::size_t>(i)] = t;
      rec(i + 1, used + t * t);
    }
  };
  rec(0, 0);
  return total;
}

Integer sigma_by_divisors(std::int64_t k) {
  Integer s = 0;
  for (std::int64_t d = 1; d <= k; ++d)
    if (k % d == 0) s += d;
  return s;
}

}  // namespace

TEST_CASE("parity names") {
  CHECK(parse_lattice_parity("odd") == LatticeParity::odd);
  CHECK(to_string(LatticeParity::all) == "all");
  CHECK_THROWS_AS(parse_lattice_parity("even"), DomainError);
}

TEST_CASE("representation numbers against brute force") {
  for (int n = 1; n <= 5; ++n) {
    for (const auto par : {LatticeParity::all, LatticeParity::odd}) {
      const auto t = rep_table(n, 60, par);
      for (std::int64_t k = 0; k <= 60; ++k)
        CHECK(Rational(t.values[static_cast<std::size_t>(k)]) ==
              brute_shell(n, k, MultiPoly::constant(n, 1), par == LatticeParity::odd));
    }
  }
  const auto r2 = rep_table(2, 25, LatticeParity::all);
  CHECK(r2.values[25] == 12);
  CHECK(r2.values[3] == 0);
}

TEST_CASE("weighted shell sums: table, direct and brute force agree") {
  std::mt19937 rng(5);
  const std::vector<const char*> polys2{"x1^4 - 6*x1^2*x2^2 + x2^4", "x1^2*x2^2 + (1/3)*x1^6", "x1^3 + x2"};
  for (const auto* text : polys2) {
    const auto p = parse_poly(text, 2);
    for (const auto par : {LatticeParity::all, LatticeParity::odd}) {
      const auto t = shell_sum_table(p, 80, par);
      for (std::int64_t k = 0; k <= 80; ++k) {
        const Rational brute = brute_shell(2, k, p, par == LatticeParity::odd);
        CHECK(t.values[static_cast<std::size_t>(k)] == brute);
        CHECK(shell_sum(2, k, p, par) == brute);
      }
    }
  }
  const auto p4 = parse_poly("x1^4 + x2^4 + x3^4 + x4^4 - (1/2)*(x1^2+x2^2+x3^2+x4^2)^2 + x1^2*x3^2", 4);
  const auto t4 = shell_sum_table(p4, 30, LatticeParity::all);
  for (std::int64_t k = 0; k <= 30; ++k) CHECK(t4.values[static_cast<std::size_t>(k)] == brute_shell(4, k, p4, false));
  CHECK(shell_sum(2, 25, parse_poly("x1^4 - 6*x1^2*x2^2 + x2^4", 2)) == -1716);
}

TEST_CASE("big-integer fallback for large weights") {
  // x1^40 overflows 128-bit accumulation well before k = 400
  const auto p = parse_poly("x1^40 + x2^2", 2);
  const auto t = shell_sum_table(p, 400, LatticeParity::all);
  for (std::int64_t k : {0, 1, 25, 169, 325, 400}) CHECK(t.values[static_cast<std::size_t>(k)] == shell_sum(2, k, p));
}

TEST_CASE("tables do not depend on the thread count") {
  const auto p = parse_poly("x1^2*x2^4 + x3^2", 3);
  const auto a = shell_sum_table(p, 2000, LatticeParity::all, 1);
  const auto b = shell_sum_table(p, 2000, LatticeParity::all, 3);
  CHECK(a.values == b.values);
}

TEST_CASE("diagonal forms") {
  const std::vector<std::int64_t> a{1, 2};
  // x^2 + 4 y^2 = 8: (+-2, +-1)
  CHECK(shell_sum_form(a, 8, MultiPoly::constant(2, 1)) == 4);
  CHECK(shell_sum_form(a, 4, MultiPoly::constant(2, 1)) == 4);  // (+-2,0), (0,+-1)
  CHECK(shell_sum_form(a, 8, parse_poly("x1^2", 2)) == 16);
  CHECK_THROWS_AS(shell_sum_form(std::vector<std::int64_t>{0, 1}, 4, MultiPoly::constant(2, 1)), DomainError);
}

TEST_CASE("factorization and sigma") {
  for (std::int64_t k = 1; k <= 2000; ++k) CHECK(sigma(Integer(k)) == sigma_by_divisors(k));
  const Integer big("1000000007");
  CHECK(sigma(big * big) == 1 + big + big * big);
  const Integer semiprime = Integer("1000000007") * Integer("998244353");
  const auto f = factorize(semiprime);
  REQUIRE(f.size() == 2);
  CHECK(f[0].first == Integer("998244353"));
  CHECK(f[1].first == Integer("1000000007"));
  CHECK_THROWS_AS(factorize(0), DomainError);
}

TEST_CASE("Jacobi and Carlitz formulas on small k") {
  const auto all = rep_table(4, 5000, LatticeParity::all);
  const auto odd = rep_table(4, 5000, LatticeParity::odd);
  for (std::int64_t k = 1; k <= 5000; ++k) {
    CHECK(jacobi_r4(k) == all.values[static_cast<std::size_t>(k)]);
    CHECK(carlitz_r4_odd(k) == odd.values[static_cast<std::size_t>(k)]);
  }
  CHECK(carlitz_r4_odd(4) == 16);
  CHECK(carlitz_r4_odd(12) == 64);
  CHECK(carlitz_r4_odd(8) == 0);
}

TEST_CASE("average counts") {
  const auto rows4 = average_compare(4, 3, LatticeParity::all, 30);
  CHECK(rows4[0].count == 9);
  CHECK(rows4[0].main_term.to_fixed(5) == "4.9348");
  const auto rows2 = average_compare(2, 10, LatticeParity::all, 30);
  CHECK(rows2[9].count == 317);
  CHECK(average_constant(4, LatticeParity::odd) == ExactValue::pi_power(2, Rational(1, 32)));
  CHECK(average_constant(3, LatticeParity::all) == ExactValue::pi_power(1, Rational(4, 3)));
  // counts against the representation table
  const auto t = rep_table(3, 400, LatticeParity::odd);
  const auto rows3 = average_compare(3, 20, LatticeParity::odd, 30);
  for (const auto& r : rows3) {
    Integer c = 0;
    for (std::int64_t k = 0; k <= r.radius * r.radius; ++k) c += t.values[static_cast<std::size_t>(k)];
    CHECK(r.count == c);
  }
}

TEST_CASE("equidistribution error") {
  const auto e = equidist_error(2, 25, parse_poly("x1^4 - 6*x1^2*x2^2 + x2^4", 2), 30);
  CHECK(e.to_fixed(4) == "-0.2288");
  // a constant polynomial is perfectly equidistributed
  CHECK(equidist_error(3, 9, MultiPoly::constant(3, 5), 30).is_zero());
  CHECK_THROWS_AS(equidist_error(2, 3, parse_poly("x1^2", 2), 30), DomainError);
  CHECK_THROWS_AS(equidist_error(2, 5, parse_poly("x1^2 + x1", 2), 30), DomainError);
}

TEST_CASE("extremal r4 ratios") {
  const auto r = r4_extremal_ratio(3, 40);
  CHECK(r.k == 105);
  CHECK(r.r4 == 1536);
  CHECK(r.ratio.to_fixed(3) == "9.51");
  CHECK(r.reference.to_fixed(30) == "8.66209754608739664097750430553");
  CHECK_THROWS_AS(r4_extremal_ratio(2, 40), DomainError);
}

TEST_CASE("jump check") {
  const auto j = jump_check(5, 1, 2000, LatticeParity::all, 30);
  CHECK(j.shells_checked > 0);
  CHECK(j.min_ratio.sign() > 0);
  const auto o = jump_check(5, 1, 2000, LatticeParity::odd, 30);
  CHECK(o.argmin % 8 == 5);
  CHECK(o.empty_mod4_classes > 0);
  CHECK_THROWS_AS(jump_check(4, 1, 100, LatticeParity::all, 30), DomainError);
}
