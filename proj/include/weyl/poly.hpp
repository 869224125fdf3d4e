#pragma once

// Sparse multivariate polynomials over exact rationals.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weyl/exact.hpp"

namespace weyl {

using Exponents = std::vector<std::uint32_t>;

class MultiPoly {
 public:
  explicit MultiPoly(int n_vars = 1);

  static MultiPoly constant(int n_vars, const Rational& c);
  /// x_{index}, 1-based like the text grammar.
  static MultiPoly variable(int n_vars, int index);
  /// x1^2 + ... + xn^2
  static MultiPoly norm_squared(int n_vars);

  int n_vars() const { return n_vars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  MultiPoly homogeneous_part(int degree) const;
  /// Degrees present, ascending.
  std::vector<int> degrees() const;

  void add_term(const Exponents& e, Rational c);
  Rational coefficient(const Exponents& e) const;

  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const { return *this * Rational(-1); }
  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

  MultiPoly pow(unsigned k) const;

  Rational evaluate(std::span<const Rational> point) const;
  Rational evaluate(std::span<const std::int64_t> point) const;

  /// Text in the input grammar, e.g. "x1^4 - 6*x1^2*x2^2 + x2^4".
  std::string to_string() const;

 private:
  void check_arity(const MultiPoly& other) const;

  int n_vars_;
  std::map<Exponents, Rational> terms_;
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*'? factor)*
///   factor := rational | var ('^' uint)? | '(' expr ')'
///   var    := 'x' uint
///   rational := int | '(' int '/' uint ')' | int '/' uint
/// Leading unary minus is accepted on terms. Throws ParseError.
MultiPoly parse_poly(std::string_view text, int n_vars);

MultiPoly laplacian(const MultiPoly& p);
MultiPoly derivative(const MultiPoly& p, int var_index);

struct HarmonicComponent {
  int l = 0;           // radial power: contributes ||x||^{2l} * component
  MultiPoly component; // harmonic, homogeneous of degree g - 2l
};

using HarmonicDecomposition = std::vector<HarmonicComponent>;

/// P = sum_l ||x||^{2l} H_l with each H_l harmonic. Requires P homogeneous;
/// the zero polynomial decomposes to the empty list. Components are listed
/// by increasing l and zero components are omitted.
HarmonicDecomposition harmonic_decompose(const MultiPoly& p);

MultiPoly reconstruct(const HarmonicDecomposition& parts, int n_vars);

/// Normalized integral over the unit sphere S^{n-1}.
Rational sphere_integral(const MultiPoly& p, int n);

/// Surface area of S^{n-1}, exactly.
ExactValue sphere_volume(int n);
/// Volume of the unit ball in R^n.
ExactValue ball_volume(int n);

struct BallIntegral {
  ExactValue coefficient;  // integral over B_R equals coefficient * R^power
  int power = 0;
};

/// Requires P homogeneous (zero is accepted and yields coefficient 0).
BallIntegral ball_integral(const MultiPoly& p, int n);

/// P(a_1 x_1, ..., a_n x_n).
MultiPoly substitute_diag(const MultiPoly& p, std::span<const std::int64_t> a);

}  // namespace weyl
