#ifndef ARITHDYN_QUAD_AFFINE_HPP
#define ARITHDYN_QUAD_AFFINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "arithdyn/certify.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/multipoly.hpp"
#include "arithdyn/selfmap.hpp"

namespace arithdyn {

enum class BoundaryCase { Case1, Case2a, Case2b, Case3a, Case3b, Case3Unreduced, DegenerateFZero };
std::string case_name(BoundaryCase c);

// f = [F + Z F1 : G + Z G1 : Z^d] on P^2 with F, G the degree-d parts of the
// affine components, H = gcd(F, G), F = H F0, G = H G0.
struct BoundaryData {
  SelfMap map;          // affine map analysed (after a swap, if any)
  bool swapped = false;
  int degree = 0;
  std::vector<std::string> vars;  // X, Y, Z
  MultiPoly F, G, F1, G1, H, F0, G0;
  BoundaryCase kind = BoundaryCase::DegenerateFZero;
  std::optional<Rational> phi_a;  // Case3a: phi = [a X : Y]
  std::optional<Rational> phi_b;  // Case3b: phi = [X + b Y : Y]
};

// Requires an affine self-map of A^2 of degree >= 2.
BoundaryData boundary_analyze(const SelfMap& f, bool allow_swap = true);

struct FixedPointAtInfinity {
  std::optional<ProjPoint> point;  // [X : Y] on the line Z = 0, when rational
  std::vector<Integer> minpoly;    // in t = X/Y; empty for [1:0]
  int field_degree = 1;
  unsigned multiplicity = 1;
};

struct FixedPointsAtInfinity {
  bool everything_fixed = false;  // phi is the identity
  std::vector<FixedPointAtInfinity> points;
};

// Roots of F0 Y - G0 X.
FixedPointsAtInfinity fixed_points_at_infinity(const BoundaryData& bd);

enum class BoxShape { Attracting, Case3 };

// A p-adic neighbourhood of a fixed point at infinity, in coordinates where
// the fixed point is [1:0:0]. Attracting: v(x) < 0 and v(x) < v(y).
// Case3: v(x) < v(y) < 0 and d v(y) < (d-1) v(x).
struct AttractorBox {
  Integer p;
  ProjPoint q0;
  BoxShape shape = BoxShape::Attracting;
  SelfMap map;                 // conjugated so that q0 becomes [1:0:0]
  std::vector<Rational> conj;  // 2x2 matrix M, row major: old = M new
  int degree = 0;
  int h_index = 0;             // Case3: largest k with X^k Y^(d-1-k) in H
  std::string describe() const;
  bool contains(const AffPoint& p_new) const;  // conjugated coordinates
  AffPoint to_box(const AffPoint& p_old) const;
};

// Least prime at which every coefficient of the conjugated map is a unit.
AttractorBox attractor_box(const BoundaryData& bd, const FixedPointAtInfinity& q0, long prime_bound = 10000);
// Same box at a given prime; InvalidArgument when p is not admissible.
AttractorBox attractor_box_at(const BoundaryData& bd, const FixedPointAtInfinity& q0, const Integer& p);

// Deterministic members of U ∩ A^2(Q), in box coordinates.
std::vector<AffPoint> box_samples(const AttractorBox& box, std::size_t count);

struct LambdaReport {
  std::vector<long> m;    // lambda_p(f^k P) = m_k log p
  std::vector<long> y_m;  // -v_p(y) along the orbit
  bool law_holds = true;
  std::string law;
};

// P in box coordinates. Attracting boxes: m_k = d^k m_0. Case3 boxes:
// s = v(y) - v(x) is constant and -v(y) follows R' = d R + k s.
LambdaReport lambda_growth_report(const AttractorBox& box, const AffPoint& P, int n);

struct NormalFormQuadratic {
  enum class Which { N11, N31, N32 } which = Which::N11;
  std::vector<Rational> params;  // (c1, c2) | (a, c) | (a, c1, c2)
  SelfMap map() const;
  std::string name() const;  // "1.1", "3.1", "3.2"
};

NormalFormQuadratic::Which parse_normal_form(const std::string& name);
// Valuation region the family points of a normal form are drawn from.
std::string normal_form_region(NormalFormQuadratic::Which which);

// Case-specific families. Points and maximality certificates carry exact
// valuations; pairs carry padic-invariant certificates.
FamilyResult quad_normal_family(const NormalFormQuadratic& nf, const Integer& p, std::size_t k,
                                const std::vector<MultiPoly>& avoid = {});
// Points of a Case3a/Case3b map with distinct s = v(y/x).
FamilyResult case3_family(const BoundaryData& bd, const Integer& p, std::size_t k,
                          const std::vector<MultiPoly>& avoid = {});

// Valuation signature (-v_p(x), -v_p(y)); zero coordinates have no signature.
std::pair<long, long> signature(const AffPoint& P, const Integer& p);

}  // namespace arithdyn

#endif
