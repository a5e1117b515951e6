#ifndef ARITHDYN_MULTIPOLY_HPP
#define ARITHDYN_MULTIPOLY_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arithdyn/arith.hpp"

namespace arithdyn {

inline constexpr std::size_t kMaxVars = 8;

// Exponent vector. Slots past the polynomial's variable count stay zero, and
// the default ordering is lexicographic with variable 0 most significant.
class Monomial {
 public:
  Monomial() = default;
  Monomial(std::initializer_list<unsigned> exps);

  unsigned operator[](std::size_t i) const { return e_[i]; }
  void set(std::size_t i, unsigned value);
  unsigned degree() const;
  bool divides(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  // Requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::size_t hash() const;

 private:
  std::array<std::uint16_t, kMaxVars> e_{};
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// Sparse multivariate polynomial with exact rational coefficients over a
// named, ordered variable set. Terms are kept in decreasing lex order, so
// the first term is the leading term.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational, std::greater<Monomial>>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> variables);

  static MultiPoly constant(std::vector<std::string> variables, const Rational& c);
  static MultiPoly variable(std::vector<std::string> variables, std::size_t index);
  static MultiPoly term(std::vector<std::string> variables, const Monomial& m, const Rational& c);

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_homogeneous() const;
  bool is_integral() const;  // all coefficients integers
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;
  // Lowest total degree among the terms; -1 for zero.
  int low_degree() const;

  Rational coefficient(const Monomial& m) const;
  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;
  MultiPoly homogeneous_part(int degree) const;

  void add_term(const Monomial& m, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  MultiPoly operator-() const;
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(unsigned n) const;
  MultiPoly derivative(std::size_t var) const;

  Rational evaluate(std::span<const Rational> point) const;
  // Substitutes values[i] for variable i; the values share one variable set.
  MultiPoly substitute(std::span<const MultiPoly> values) const;
  // Same polynomial viewed over another variable list; `mapping[i]` is the
  // new index of old variable i.
  MultiPoly rename(std::vector<std::string> variables, std::span<const std::size_t> mapping) const;

  // lcm of coefficient denominators and gcd of the resulting numerators.
  Integer denominator_lcm() const;
  Integer numerator_content() const;
  // Content 1 over the integers and positive leading coefficient.
  MultiPoly normalized() const;

  std::string to_string() const;

 private:
  std::vector<std::string> vars_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

// Exact quotient when b divides a, otherwise nullopt.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);

// gcd normalized to content 1 and positive lex-leading coefficient.
// gcd(0, g) = normalized g. Throws InvalidArgument when both are zero or the
// variable sets differ.
MultiPoly poly_gcd(const MultiPoly& f, const MultiPoly& g);

// Homogenization in a fresh last variable, padding every term to `degree`
// (defaults to f.degree()).
MultiPoly homogenize(const MultiPoly& f, const std::string& new_var, int degree = -1);
// Sets variable `var` to 1 and drops it from the variable list.
MultiPoly dehomogenize(const MultiPoly& f, std::size_t var);

// Dense coefficient list (constant term first) of a polynomial in at most one
// effective variable `var`.
std::vector<Rational> univariate_coefficients(const MultiPoly& f, std::size_t var = 0);
MultiPoly from_univariate(const std::vector<Rational>& coeffs, const std::string& var);

// Sylvester resultant of two univariate polynomials in the same single
// variable. Res(f, g) = lc(f)^deg g * prod g(roots of f).
Rational resultant(const MultiPoly& f, const MultiPoly& g);
// Resultant with respect to variable `var` of two polynomials in the same
// two-variable set; the result lives in the remaining variable.
MultiPoly resultant_in(const MultiPoly& f, const MultiPoly& g, std::size_t var);

}  // namespace arithdyn

#endif
