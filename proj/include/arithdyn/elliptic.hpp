#ifndef ARITHDYN_ELLIPTIC_HPP
#define ARITHDYN_ELLIPTIC_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arithdyn/arith.hpp"
#include "arithdyn/canonical.hpp"
#include "arithdyn/certify.hpp"
#include "arithdyn/interval.hpp"

namespace arithdyn {

class ECPoint {
 public:
  ECPoint() = default;  // the point at infinity
  ECPoint(Rational x, Rational y) : inf_(false), x_(std::move(x)), y_(std::move(y)) {}
  static ECPoint infinity() { return {}; }

  bool is_infinity() const { return inf_; }
  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }
  friend bool operator==(const ECPoint&, const ECPoint&) = default;
  std::string to_string() const;

 private:
  bool inf_ = true;
  Rational x_, y_;
};

std::ostream& operator<<(std::ostream& os, const ECPoint& p);

// y^2 = x^3 + a x + b over Q. The x-coordinate duplication map is certified
// as a degree-4 morphism of P^1 at construction, giving C_E with
// |h_x(2P) - 4 h_x(P)| <= C_E.
class EllipticCurve {
 public:
  EllipticCurve(Rational a, Rational b);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  Rational discriminant() const;  // -16 (4a^3 + 27b^2)
  bool contains(const ECPoint& p) const;
  void require(const ECPoint& p) const;  // throws InvalidArgument off the curve

  // [X^4 - 2aX^2Z^2 - 8bXZ^3 + a^2Z^4 : 4(X^3Z + aXZ^3 + bZ^4)]
  const SelfMap& duplication() const;
  const MorphismCertificate& duplication_certificate() const { return *cert_; }
  Interval error_constant() const { return cert_->constant(); }
  std::string to_string() const;

 private:
  Rational a_, b_;
  std::shared_ptr<const MorphismCertificate> cert_;
};

ECPoint neg(const EllipticCurve& E, const ECPoint& P);
ECPoint add(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q);
ECPoint dbl(const EllipticCurve& E, const ECPoint& P);
ECPoint mul(const EllipticCurve& E, const Integer& n, const ECPoint& P);

// [x : 1], or [1 : 0] at infinity.
ProjPoint x_coordinate(const ECPoint& P);
// h_x(P) = h([x : 1]).
Interval x_height(const ECPoint& P);

// lim h_x(2^n P)/4^n; exactly 0 at O.
CanonicalHeightValue neron_tate_height(const EllipticCurve& E, const ECPoint& P, double target_width);
CanonicalHeightValue neron_tate_height_at_depth(const EllipticCurve& E, const ECPoint& P, int depth);

struct TorsionResult {
  enum class Kind { Torsion, NonTorsion, Undecided } kind = Kind::Undecided;
  int order = 0;                           // Torsion
  std::optional<PositivityProof> proof;    // NonTorsion
  std::vector<ECPoint> multiples;          // P, 2P, ... as searched
};

// Torsion by nP = O for n <= bound; non-torsion by hat h > 0.
TorsionResult torsion_zero_locus_test(const EllipticCurve& E, const ECPoint& P, int bound = 16);

struct QuadraticityReport {
  long l = 0;
  CanonicalHeightValue h_lp, h_p;
  Interval scaled;  // l^2 * hat h(P)
  bool intersects = false;
  double width = 0;
};
QuadraticityReport quadraticity_check(const EllipticCurve& E, const ECPoint& P, long l, double width = 1e-9);

// f = tau_a o [m].
struct ECDynamics {
  long m = 2;
  ECPoint a;
  ECPoint operator()(const EllipticCurve& E, const ECPoint& P) const;
};

// z_j = l_j x0 + b with l_1 = 1 and each next l from lem_num_solver
// (delta = m^2, squares). Requires a = (1 - m) b, so f(l x0 + b) = m l x0 + b
// and colliding orbits force (l_i / l_j)^2 in (m^2)^Z.
FamilyResult ab_family(const EllipticCurve& E, const ECDynamics& dyn, const ECPoint& x0, const ECPoint& b,
                       std::size_t k);
std::vector<Integer> ab_multipliers(long m, std::size_t k);

}  // namespace arithdyn

#endif
