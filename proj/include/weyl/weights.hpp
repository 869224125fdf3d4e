#pragma once

// Laplace spectrum of SO(N) indexed by dominant weights. Eigenvalues and
// multiplicities are expressed through the shifted coordinates x, where the
// Weyl vector is absorbed: even N uses x_j = b_j + n - j, odd N uses
// x_j = 2 b_j + 2n - 2j + 1.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "weyl/exact.hpp"

namespace weyl {

enum class Parity { even, odd };

struct GroupParams {
  int N = 0;
  int rank = 0;
  Parity parity = Parity::even;
  int dimension = 0;       // N(N-1)/2
  Integer lambda_shift;    // R^2 = radius_scale * lambda + lambda_shift
  int radius_scale = 1;    // 1 for even N, 4 for odd N

  Integer radius_squared(std::int64_t lambda) const { return radius_scale * Integer(lambda) + lambda_shift; }
  std::string name() const { return "SO" + std::to_string(N); }
};

GroupParams group_params(int N);
/// "SO4", "so(4)", "SO(4)". Throws InvalidGroup.
GroupParams parse_group(const std::string& text);

using Weight = std::vector<std::int64_t>;
using Coords = std::vector<std::int64_t>;

bool is_dominant(std::span<const std::int64_t> b, const GroupParams& g);

/// Throws DomainError for a non-dominant or wrongly sized weight.
Coords weight_to_coords(std::span<const std::int64_t> b, const GroupParams& g);

/// Squared Weyl dimension product evaluated at arbitrary integer x, as an
/// exact rational (it need not be integral off the relevant lattice).
Rational multiplicity_rational(std::span<const std::int64_t> x, const GroupParams& g);

/// Same product, asserted integral. Throws DomainError otherwise.
Integer multiplicity(std::span<const std::int64_t> x, const GroupParams& g);

/// Denominator of the (unsquared) Weyl dimension product.
Integer weyl_denominator(const GroupParams& g);

/// Exact eigenvalue of -Laplace for a dominant weight.
std::int64_t eigenvalue(std::span<const std::int64_t> b, const GroupParams& g);
/// Eigenvalue from coordinates: (sum x^2 - shift) / scale, asserted integral.
std::int64_t eigenvalue_from_coords(std::span<const std::int64_t> x, const GroupParams& g);

struct SpectrumEntry {
  std::int64_t eigenvalue = 0;
  Integer multiplicity;
};

using Spectrum = std::vector<SpectrumEntry>;

/// Calls `visit(b, x)` for every dominant weight with eigenvalue <= lambda_max.
void for_each_dominant(const GroupParams& g, std::int64_t lambda_max,
                       const std::function<void(const Weight&, const Coords&)>& visit);

Spectrum enumerate_spectrum(const GroupParams& g, std::int64_t lambda_max);

nlohmann::json spectrum_to_json(const Spectrum& s);
std::string spectrum_to_csv(const Spectrum& s);

}  // namespace weyl
