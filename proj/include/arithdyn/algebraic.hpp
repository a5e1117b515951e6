#ifndef ARITHDYN_ALGEBRAIC_HPP
#define ARITHDYN_ALGEBRAIC_HPP

#include <complex>
#include <vector>

#include "arithdyn/arith.hpp"
#include "arithdyn/interval.hpp"
#include "arithdyn/multipoly.hpp"

namespace arithdyn {

// Dense univariate polynomial, constant term first, no trailing zeros.
using UPoly = std::vector<Rational>;

namespace upoly {

void trim(UPoly& p);
int degree(const UPoly& p);
UPoly mul(const UPoly& a, const UPoly& b);
UPoly sub(const UPoly& a, const UPoly& b);
// Quotient and remainder; b nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(UPoly a, UPoly b);  // monic, gcd(0,0) = 0
UPoly derivative(const UPoly& p);
UPoly squarefree_part(const UPoly& p);  // monic
Rational evaluate(const UPoly& p, const Rational& x);
// Integer coefficients with content 1 and positive leading coefficient.
std::vector<Integer> primitive(const UPoly& p);
UPoly from_integers(const std::vector<Integer>& c);

// Approximate complex roots (Aberth iteration), one per degree.
std::vector<std::complex<long double>> approximate_roots(const UPoly& p);

// Monic irreducible factors over Q with multiplicity. Rational roots are
// split off exactly; the remaining factors come from recombining numerical
// roots, each candidate accepted only after exact division.
std::vector<std::pair<UPoly, unsigned>> factor(const UPoly& p);

}  // namespace upoly

// Disc in C certified to contain exactly one root of a polynomial.
struct RootDisc {
  double re = 0, im = 0;
  double radius = 0;  // upper bound
};

// Inclusion discs for all roots of a squarefree polynomial (Smith's bound,
// evaluated in interval arithmetic). Throws PrecisionExhausted when the discs
// are not pairwise disjoint.
std::vector<RootDisc> isolate_roots(const UPoly& p);

// Root of an irreducible integer polynomial, identified by an isolating disc.
class AlgebraicNumber {
 public:
  // `minpoly` must be irreducible over Q; the root selected is the one whose
  // disc is nearest `approx`.
  AlgebraicNumber(const UPoly& minpoly, std::complex<double> approx);
  static AlgebraicNumber rational(const Rational& q);

  // Integer coefficients, content 1, positive leading coefficient.
  const std::vector<Integer>& minpoly() const { return minpoly_; }
  UPoly minpoly_rational() const { return upoly::from_integers(minpoly_); }
  MultiPoly minpoly_poly(const std::string& var = "t") const;
  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  const RootDisc& disc() const { return disc_; }

 private:
  AlgebraicNumber() = default;
  std::vector<Integer> minpoly_;
  RootDisc disc_;
};

// (1/d) log M(minpoly), M the Mahler measure. Width is limited by the double
// root discs; requesting a tolerance below what they deliver throws
// PrecisionExhausted.
Interval algebraic_height(const AlgebraicNumber& a, double tolerance = 1e-9);
Interval mahler_log(const std::vector<Integer>& poly);

}  // namespace arithdyn

#endif
