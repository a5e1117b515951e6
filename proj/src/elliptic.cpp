#include "arithdyn/elliptic.hpp"

#include <ostream>

namespace arithdyn {

std::string ECPoint::to_string() const {
  if (inf_) return "O";
  return "(" + x_.get_str() + ", " + y_.get_str() + ")";
}

std::ostream& operator<<(std::ostream& os, const ECPoint& p) { return os << p.to_string(); }

EllipticCurve::EllipticCurve(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
  if (4 * a_ * a_ * a_ + 27 * b_ * b_ == 0) throw InvalidArgument("elliptic curve: singular (4a^3 + 27b^2 = 0)");
  std::vector<std::string> vars{"X", "Z"};
  MultiPoly X = MultiPoly::variable(vars, 0), Z = MultiPoly::variable(vars, 1);
  MultiPoly num = X.pow(4) - Rational(2) * a_ * X * X * Z * Z - Rational(8) * b_ * X * Z.pow(3) + a_ * a_ * Z.pow(4);
  MultiPoly den = Rational(4) * (X.pow(3) * Z + a_ * X * Z.pow(3) + b_ * Z.pow(4));
  auto res = certify_morphism(SelfMap::projective({num, den}));
  if (auto* n = std::get_if<NotAMorphism>(&res))
    throw Error("elliptic curve: duplication map is not a morphism (" + n->reason + ")");
  cert_ = std::make_shared<const MorphismCertificate>(std::get<MorphismCertificate>(std::move(res)));
}

Rational EllipticCurve::discriminant() const { return Rational(-16) * (4 * a_ * a_ * a_ + 27 * b_ * b_); }

bool EllipticCurve::contains(const ECPoint& p) const {
  if (p.is_infinity()) return true;
  const Rational& x = p.x();
  return p.y() * p.y() == x * x * x + a_ * x + b_;
}

void EllipticCurve::require(const ECPoint& p) const {
  if (!contains(p)) throw InvalidArgument("point " + p.to_string() + " is not on " + to_string());
}

const SelfMap& EllipticCurve::duplication() const { return cert_->map(); }

std::string EllipticCurve::to_string() const {
  return "y^2 = x^3 + (" + a_.get_str() + ")x + (" + b_.get_str() + ")";
}

ECPoint neg(const EllipticCurve& E, const ECPoint& P) {
  E.require(P);
  if (P.is_infinity()) return P;
  return {P.x(), -P.y()};
}

ECPoint dbl(const EllipticCurve& E, const ECPoint& P) {
  E.require(P);
  if (P.is_infinity() || P.y() == 0) return ECPoint::infinity();
  Rational lam = (3 * P.x() * P.x() + E.a()) / (2 * P.y());
  Rational x3 = lam * lam - 2 * P.x();
  Rational y3 = lam * (P.x() - x3) - P.y();
  return {x3, y3};
}

ECPoint add(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q) {
  E.require(P);
  E.require(Q);
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  if (P.x() == Q.x()) {
    if (P.y() == -Q.y()) return ECPoint::infinity();
    return dbl(E, P);
  }
  Rational lam = (Q.y() - P.y()) / (Q.x() - P.x());
  Rational x3 = lam * lam - P.x() - Q.x();
  Rational y3 = lam * (P.x() - x3) - P.y();
  return {x3, y3};
}

ECPoint mul(const EllipticCurve& E, const Integer& n, const ECPoint& P) {
  E.require(P);
  if (n < 0) return mul(E, -n, neg(E, P));
  ECPoint result, base = P;
  Integer k = n;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) result = add(E, result, base);
    k >>= 1;
    if (k > 0) base = dbl(E, base);
  }
  return result;
}

ProjPoint x_coordinate(const ECPoint& P) {
  if (P.is_infinity()) return ProjPoint({Integer(1), Integer(0)});
  return ProjPoint::from_rationals({P.x(), Rational(1)});
}

Interval x_height(const ECPoint& P) { return weil_height(x_coordinate(P)); }

namespace {

CanonicalHeightValue zero_height(const EllipticCurve& E) {
  CanonicalHeightValue v;
  v.value = Interval(0.0);
  v.degree = 4;
  v.c_plus = E.duplication_certificate().c_plus();
  v.c_minus = E.duplication_certificate().c_minus();
  return v;
}

}  // namespace

CanonicalHeightValue neron_tate_height(const EllipticCurve& E, const ECPoint& P, double target_width) {
  E.require(P);
  if (P.is_infinity()) return zero_height(E);
  return canonical_height(E.duplication_certificate(), x_coordinate(P), target_width);
}

CanonicalHeightValue neron_tate_height_at_depth(const EllipticCurve& E, const ECPoint& P, int depth) {
  E.require(P);
  if (P.is_infinity()) {
    auto v = zero_height(E);
    v.depth = depth;
    return v;
  }
  return canonical_height_at_depth(E.duplication_certificate(), x_coordinate(P), depth);
}

TorsionResult torsion_zero_locus_test(const EllipticCurve& E, const ECPoint& P, int bound) {
  E.require(P);
  if (bound < 1) throw InvalidArgument("torsion test: bound must be positive");
  TorsionResult r;
  ECPoint cur = P;
  for (int n = 1; n <= bound; ++n) {
    r.multiples.push_back(cur);
    if (cur.is_infinity()) {
      r.kind = TorsionResult::Kind::Torsion;
      r.order = n;
      return r;
    }
    cur = add(E, cur, P);
  }
  r.proof = positive_canonical_height(E.duplication_certificate(), x_coordinate(P));
  r.kind = r.proof ? TorsionResult::Kind::NonTorsion : TorsionResult::Kind::Undecided;
  return r;
}

QuadraticityReport quadraticity_check(const EllipticCurve& E, const ECPoint& P, long l, double width) {
  QuadraticityReport r;
  r.l = l;
  double l2 = static_cast<double>(l) * static_cast<double>(l);
  r.h_p = neron_tate_height(E, P, l2 > 1 ? width / (2 * l2) : width);
  r.h_lp = neron_tate_height(E, mul(E, Integer(l), P), width);
  r.scaled = Interval(static_cast<double>(l)) * Interval(static_cast<double>(l)) * r.h_p.value;
  r.intersects = r.h_lp.value.intersects(r.scaled);
  r.width = std::max(r.h_lp.width(), r.scaled.width());
  return r;
}

ECPoint ECDynamics::operator()(const EllipticCurve& E, const ECPoint& P) const {
  return add(E, mul(E, Integer(m), P), a);
}

std::vector<Integer> ab_multipliers(long m, std::size_t k) {
  if (m >= -1 && m <= 1) throw InvalidArgument("ab_multipliers: |m| must be at least 2");
  std::vector<Integer> ls;
  if (k == 0) return ls;
  ls.emplace_back(1);
  Rational delta(Integer(m) * m);
  while (ls.size() < k) ls.push_back(lem_num_solver(delta, true, ls).l);
  return ls;
}

FamilyResult ab_family(const EllipticCurve& E, const ECDynamics& dyn, const ECPoint& x0, const ECPoint& b,
                       std::size_t k) {
  E.require(x0);
  E.require(b);
  E.require(dyn.a);
  if (k < 1) throw InvalidArgument("ab_family: size must be at least 1");
  if (dyn.m >= -1 && dyn.m <= 1) throw InvalidArgument("ab_family: |m| must be at least 2");
  if (mul(E, Integer(1 - dyn.m), b) != dyn.a) throw InvalidArgument("ab_family: translation must equal (1 - m) b");
  const auto& cert = E.duplication_certificate();
  if (x0.is_infinity() || !positive_canonical_height(cert, x_coordinate(x0)))
    throw InvalidArgument("ab_family: x0 has no non-torsion certificate (E(Q) may have rank 0)");
  Rational delta(Integer(dyn.m) * dyn.m);
  FamilyResult out;
  out.scheme = Scheme::PadicInvariant;
  std::vector<Integer> ls;
  auto point_json = [](const ECPoint& z) {
    if (z.is_infinity()) return Json{{"infinity", true}};
    return Json{{"x", z.x().get_str()}, {"y", z.y().get_str()}};
  };
  while (ls.size() < k) {
    Integer l = ls.empty() ? Integer(1) : lem_num_solver(delta, true, ls).l;
    ++out.examined;
    ECPoint z = add(E, mul(E, l, x0), b);
    auto pos = positive_canonical_height(cert, x_coordinate(z));
    if (!pos) throw Error("ab_family: l x0 + b has no positivity certificate");
    for (std::size_t i = 0; i < ls.size(); ++i) {
      DisjointnessCertificate c;
      c.scheme = Scheme::PadicInvariant;
      c.payload = Json{{"kind", "ratio-valuation"},
                       {"p", l.get_str()},
                       {"delta", delta.get_str()},
                       {"exponent", "2"},
                       {"l_x", ls[i].get_str()},
                       {"l_y", l.get_str()}};
      out.pairs.push_back({i, ls.size(), std::move(c)});
    }
    Json pj = point_json(z);
    pj["l"] = l.get_str();
    out.points.push_back(pj);
    Json it = Json::array();
    for (const auto& c : pos->iterate.coords()) it.push_back(c.get_str());
    out.maximality.push_back(Json{{"depth", std::to_string(pos->depth)}, {"iterate", it}});
    ls.push_back(l);
  }
  out.complete = true;
  return out;
}

}  // namespace arithdyn
