#include <map>
#include <numeric>

#include "doctest.h"
#include "weyl/errors.hpp"
#include "weyl/weights.hpp"

using namespace weyl;

namespace {

// Root-system oracle: dim = prod_{alpha > 0} <b + rho, alpha> / <rho, alpha>
// and eigenvalue <b, b + 2 rho>, with positive roots e_i +- e_j (i < j),
// plus e_i for odd N.
struct Oracle {
  int n;
  bool odd;
  std::vector<Rational> rho;

  explicit Oracle(int N) : n(N / 2), odd(N % 2 == 1) {
    for (int i = 0; i < n; ++i) rho.push_back(odd ? Rational(2 * (n - i) - 1, 2) : Rational(n - 1 - i));
  }

  Rational dim(const std::vector<std::int64_t>& b) const {
    Rational num = 1, den = 1;
    for (int i = 0; i < n; ++i) {
      const Rational li = Rational(b[i]) + rho[i];
      for (int j = i + 1; j < n; ++j) {
        const Rational lj = Rational(b[j]) + rho[j];
        num *= (li - lj) * (li + lj);
        den *= (rho[i] - rho[j]) * (rho[i] + rho[j]);
      }
      if (odd) {
        num *= li;
        den *= rho[i];
      }
    }
    return num / den;
  }

  Rational casimir(const std::vector<std::int64_t>& b) const {
    Rational s = 0;
    for (int i = 0; i < n; ++i) s += Rational(b[i]) * (Rational(b[i]) + 2 * rho[i]);
    return s;
  }

  // N(lambda) over a box of candidate weights
  Integer count(std::int64_t lambda) const {
    Integer total = 0;
    std::vector<std::int64_t> b(n, 0);
    const std::int64_t top = static_cast<std::int64_t>(std::sqrt(static_cast<double>(lambda))) + 2;
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        // dominance: b_1 >= ... >= b_{n-1} >= |b_n| (even), b_n >= 0 (odd)
        for (int k = 0; k + 1 < n; ++k)
          if (b[k] < b[k + 1] || (k + 1 == n - 1 && !odd && b[k] < -b[k + 1])) return;
        if (odd && n > 0 && b[n - 1] < 0) return;
        if (casimir(b) > lambda) return;
        const Rational d = dim(b);
        total += Integer(d * d);
        return;
      }
      for (std::int64_t v = -top; v <= top; ++v) {
        b[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
    return total;
  }
};

}  // namespace

TEST_CASE("group parameters") {
  const auto so8 = group_params(8);
  CHECK(so8.rank == 4);
  CHECK(so8.parity == Parity::even);
  CHECK(so8.dimension == 28);
  CHECK(so8.lambda_shift == 14);
  const auto so5 = group_params(5);
  CHECK(so5.rank == 2);
  CHECK(so5.radius_scale == 4);
  // R^2 = 4 lambda + n(4n^2-1)/3 with n=2
  CHECK(so5.lambda_shift == 10);
  CHECK(parse_group("SO(7)").N == 7);
  CHECK(parse_group("so4").N == 4);
  CHECK_THROWS_AS(group_params(1), InvalidGroup);
  CHECK_THROWS_AS(parse_group("SO1"), InvalidGroup);
  CHECK_THROWS_AS(parse_group("SU3"), InvalidGroup);
}

TEST_CASE("dominance") {
  const auto so4 = group_params(4);
  const auto so5 = group_params(5);
  CHECK(is_dominant(std::vector<std::int64_t>{1, -1}, so4));
  CHECK_FALSE(is_dominant(std::vector<std::int64_t>{0, 1}, so4));
  CHECK_FALSE(is_dominant(std::vector<std::int64_t>{1, -1}, so5));
  CHECK(is_dominant(std::vector<std::int64_t>{-3}, group_params(2)));
}

TEST_CASE("small multiplicities and eigenvalues") {
  const auto so3 = group_params(3);
  for (std::int64_t L = 0; L < 20; ++L) {
    const std::vector<std::int64_t> b{L};
    CHECK(eigenvalue(b, so3) == L * (L + 1));
    CHECK(multiplicity(weight_to_coords(b, so3), so3) == (2 * L + 1) * (2 * L + 1));
  }
  const auto so4 = group_params(4);
  const std::vector<std::int64_t> b{1, 0};
  CHECK(eigenvalue(b, so4) == 3);
  CHECK(multiplicity(weight_to_coords(b, so4), so4) == 16);
  CHECK_THROWS_AS(weight_to_coords(std::vector<std::int64_t>{0, 1}, so4), DomainError);
}

TEST_CASE("multiplicity agrees with the root-system oracle") {
  for (int N = 2; N <= 11; ++N) {
    const auto g = group_params(N);
    const Oracle o(N);
    for_each_dominant(g, 60, [&](const Weight& b, const Coords& x) {
      const Rational d = o.dim(b);
      CHECK(multiplicity(x, g) == Integer(d * d));
      CHECK(Rational(eigenvalue_from_coords(x, g)) == o.casimir(b));
      CHECK(Rational(eigenvalue(b, g)) == o.casimir(b));
    });
  }
}

TEST_CASE("off-lattice multiplicity is rational, integer access throws") {
  const auto so5 = group_params(5);
  const std::vector<std::int64_t> x{2, 2};  // equal coordinates: zero
  CHECK(multiplicity_rational(x, so5) == 0);
  // even coordinates are off the odd lattice: (9-4)*3*2 / 24 = 5/4
  const std::vector<std::int64_t> y{3, 2};
  CHECK(multiplicity_rational(y, so5) == Rational(25, 16));
  CHECK_THROWS_AS(multiplicity(y, so5), DomainError);
}

TEST_CASE("spectrum enumeration") {
  const auto s = enumerate_spectrum(group_params(4), 8);
  REQUIRE(s.size() >= 3);
  CHECK(s[0].eigenvalue == 0);
  CHECK(s[0].multiplicity == 1);
  CHECK(s[1].eigenvalue == 3);
  CHECK(s[1].multiplicity == 16);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1].eigenvalue < s[i].eigenvalue);
  Integer total = 0;
  for (const auto& e : s) total += e.multiplicity;
  CHECK(total == Oracle(4).count(8));
  const auto csv = spectrum_to_csv(s);
  CHECK(csv.rfind("lambda,mult\n0,1\n3,16\n", 0) == 0);
  const auto j = spectrum_to_json(s);
  CHECK(j[1]["mult"] == "16");
}

TEST_CASE("spectrum multiplicities are squares of the oracle dimensions, aggregated") {
  for (int N : {5, 6, 7}) {
    const auto g = group_params(N);
    const Oracle o(N);
    std::int64_t prev = 0;
    Integer cumulative = 0;
    for (const auto& e : enumerate_spectrum(g, 150)) {
      for (std::int64_t l = prev; l < e.eigenvalue; ++l) CHECK(cumulative == o.count(l));
      cumulative += e.multiplicity;
      prev = e.eigenvalue;
    }
  }
}
