#include "weyl/weights.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "weyl/errors.hpp"

namespace weyl {

GroupParams group_params(int N) {
  if (N < 2) throw InvalidGroup("SO(N) requires N >= 2, got N=" + std::to_string(N));
  GroupParams g;
  g.N = N;
  g.dimension = N * (N - 1) / 2;
  if (N % 2 == 0) {
    const int n = N / 2;
    g.rank = n;
    g.parity = Parity::even;
    g.radius_scale = 1;
    g.lambda_shift = Integer(n) * (n - 1) * (2 * n - 1) / 6;
  } else {
    const int n = (N - 1) / 2;
    g.rank = n;
    g.parity = Parity::odd;
    g.radius_scale = 4;
    g.lambda_shift = Integer(n) * (4 * n * n - 1) / 3;
  }
  return g;
}

GroupParams parse_group(const std::string& text) {
  std::string s;
  for (const char c : text) {
    if (c != '(' && c != ')' && c != ' ') s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  if (s.size() < 3 || s.substr(0, 2) != "SO" ||
      !std::all_of(s.begin() + 2, s.end(), [](unsigned char c) { return std::isdigit(c); }) || s.size() > 8) {
    throw InvalidGroup("expected a group name like SO4, got '" + text + "'");
  }
  return group_params(std::stoi(s.substr(2)));
}

bool is_dominant(std::span<const std::int64_t> b, const GroupParams& g) {
  const auto n = static_cast<std::size_t>(g.rank);
  if (b.size() != n) return false;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (b[j] < b[j + 1]) return false;
  }
  if (g.parity == Parity::odd) return b[n - 1] >= 0;
  // even: b_{n-1} >= |b_n|; vacuous for SO(2)
  if (n >= 2 && b[n - 2] < (b[n - 1] < 0 ? -b[n - 1] : b[n - 1])) return false;
  return true;
}

Coords weight_to_coords(std::span<const std::int64_t> b, const GroupParams& g) {
  if (!is_dominant(b, g)) throw DomainError("weight is not dominant for " + g.name());
  const auto n = static_cast<std::int64_t>(g.rank);
  Coords x(b.size());
  for (std::int64_t j = 1; j <= n; ++j) {
    const auto bj = b[static_cast<std::size_t>(j - 1)];
    x[static_cast<std::size_t>(j - 1)] = g.parity == Parity::even ? bj + n - j : 2 * bj + 2 * n - 2 * j + 1;
  }
  return x;
}

Integer weyl_denominator(const GroupParams& g) {
  const int n = g.rank;
  Integer den = 1;
  for (int i = 0; i < n; ++i) {
    if (g.parity == Parity::odd) den *= 2 * i + 1;
    for (int j = i + 1; j < n; ++j) {
      den *= g.parity == Parity::even ? j * j - i * i : (2 * j + 1) * (2 * j + 1) - (2 * i + 1) * (2 * i + 1);
    }
  }
  return den;
}

Rational multiplicity_rational(std::span<const std::int64_t> x, const GroupParams& g) {
  const int n = g.rank;
  if (x.size() != static_cast<std::size_t>(n)) throw DomainError("coordinate vector has wrong length");
  // x_{n-i} in 1-based indexing is x[n-1-i] here
  auto at = [&](int i) { return Integer(x[static_cast<std::size_t>(n - 1 - i)]); };
  Integer num = 1;
  for (int i = 0; i < n; ++i) {
    if (g.parity == Parity::odd) num *= at(i);
    for (int j = i + 1; j < n; ++j) num *= at(j) * at(j) - at(i) * at(i);
  }
  Rational dim = make_rational(num, weyl_denominator(g));
  return dim * dim;
}

Integer multiplicity(std::span<const std::int64_t> x, const GroupParams& g) {
  const Rational m = multiplicity_rational(x, g);
  if (m.get_den() != 1) throw DomainError("multiplicity is not integral at this point");
  return m.get_num();
}

std::int64_t eigenvalue_from_coords(std::span<const std::int64_t> x, const GroupParams& g) {
  Integer s = 0;
  for (const auto v : x) s += Integer(v) * v;
  s -= g.lambda_shift;
  if (s % g.radius_scale != 0) throw DomainError("eigenvalue is not integral at this point");
  s /= g.radius_scale;
  return s.get_si();
}

std::int64_t eigenvalue(std::span<const std::int64_t> b, const GroupParams& g) {
  return eigenvalue_from_coords(weight_to_coords(b, g), g);
}

void for_each_dominant(const GroupParams& g, std::int64_t lambda_max,
                       const std::function<void(const Weight&, const Coords&)>& visit) {
  if (lambda_max < 0) return;
  const int n = g.rank;
  const bool even = g.parity == Parity::even;
  const Integer r2_big = g.radius_squared(lambda_max);
  const std::int64_t r2 = r2_big.get_si();

  auto coord = [&](int j, std::int64_t bj) {  // j is 0-based
    return even ? bj + n - 1 - j : 2 * bj + 2 * n - 2 * j - 1;
  };
  // minimal sum of squares of coordinates j..n-1 (all remaining b = 0)
  std::vector<std::int64_t> tail_min(static_cast<std::size_t>(n) + 1, 0);
  for (int j = n - 1; j >= 0; --j) {
    const auto c = coord(j, 0);
    tail_min[static_cast<std::size_t>(j)] = tail_min[static_cast<std::size_t>(j) + 1] + c * c;
  }

  Weight b(static_cast<std::size_t>(n), 0);
  Coords x(static_cast<std::size_t>(n), 0);
  std::function<void(int, std::int64_t)> descend = [&](int j, std::int64_t used) {
    if (j == n) {
      visit(b, x);
      return;
    }
    const auto rest = tail_min[static_cast<std::size_t>(j) + 1];
    std::int64_t lo = 0;
    std::int64_t hi = j > 0 ? b[static_cast<std::size_t>(j) - 1] : r2;
    if (even && j == n - 1) {
      if (n == 1) hi = Integer(sqrt(r2_big)).get_si();
      lo = -hi;
    }
    for (std::int64_t bj = lo; bj <= hi; ++bj) {
      const auto xj = coord(j, bj);
      const auto total = used + xj * xj + rest;
      if (total > r2) {
        if (xj >= 0) break;  // |x_j| only grows from here on
        continue;
      }
      b[static_cast<std::size_t>(j)] = bj;
      x[static_cast<std::size_t>(j)] = xj;
      descend(j + 1, used + xj * xj);
    }
  };
  descend(0, 0);
}

Spectrum enumerate_spectrum(const GroupParams& g, std::int64_t lambda_max) {
  std::map<std::int64_t, Integer> table;
  for_each_dominant(g, lambda_max, [&](const Weight&, const Coords& x) {
    const auto lambda = eigenvalue_from_coords(x, g);
    if (lambda <= lambda_max) table[lambda] += multiplicity(x, g);
  });
  Spectrum out;
  out.reserve(table.size());
  for (auto& [lambda, mult] : table) out.push_back({lambda, std::move(mult)});
  return out;
}

nlohmann::json spectrum_to_json(const Spectrum& s) {
  auto arr = nlohmann::json::array();
  for (const auto& e : s) arr.push_back({{"lambda", e.eigenvalue}, {"mult", e.multiplicity.get_str()}});
  return arr;
}

std::string spectrum_to_csv(const Spectrum& s) {
  std::ostringstream out;
  out << "lambda,mult\n";
  for (const auto& e : s) out << e.eigenvalue << ',' << e.multiplicity.get_str() << '\n';
  return out.str();
}

}  // namespace weyl
