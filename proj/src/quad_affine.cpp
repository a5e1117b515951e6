#include "arithdyn/quad_affine.hpp"

#include <algorithm>
#include <limits>

#include "arithdyn/algebraic.hpp"

namespace arithdyn {

namespace {

constexpr long kNoValuation = std::numeric_limits<long>::min();

long neg_val(const Rational& q, const Integer& p) {
  if (q == 0) return kNoValuation;
  return -valuation(q, p).value();
}

bool is_unit_at(const Rational& c, const Integer& p) {
  return c.get_num() % p != 0 && c.get_den() % p != 0;
}

bool coefficients_are_units(const std::vector<MultiPoly>& comps, const Integer& p) {
  for (const auto& c : comps)
    for (const auto& [m, v] : c.terms())
      if (!is_unit_at(v, p)) return false;
  return true;
}

Json point_json(const AffPoint& P) { return Json{{"x", P[0].get_str()}, {"y", P[1].get_str()}}; }

// Affine map (x, y) -> (f2(y, x), f1(y, x)).
SelfMap swap_map(const SelfMap& f) {
  const auto& comps = f.affine_components();
  const auto& vars = comps[0].variables();
  std::vector<MultiPoly> sw{MultiPoly::variable(vars, 1), MultiPoly::variable(vars, 0)};
  return SelfMap::affine({comps[1].substitute(sw), comps[0].substitute(sw)}, f.variables().back());
}

// Rational 2x2 inverse, row major.
std::vector<Rational> inverse2(const std::vector<Rational>& m) {
  Rational det = m[0] * m[3] - m[1] * m[2];
  if (det == 0) throw InvalidArgument("singular conjugating matrix");
  return {m[3] / det, -m[1] / det, -m[2] / det, m[0] / det};
}

SelfMap conjugate(const SelfMap& f, const std::vector<Rational>& m) {
  const auto& comps = f.affine_components();
  const auto& vars = comps[0].variables();
  MultiPoly u = MultiPoly::variable(vars, 0), v = MultiPoly::variable(vars, 1);
  std::vector<MultiPoly> sub{m[0] * u + m[1] * v, m[2] * u + m[3] * v};
  MultiPoly a = comps[0].substitute(sub), b = comps[1].substitute(sub);
  auto mi = inverse2(m);
  return SelfMap::affine({mi[0] * a + mi[1] * b, mi[2] * a + mi[3] * b}, f.variables().back());
}

AttractorBox make_box(const BoundaryData& bd, const FixedPointAtInfinity& q0) {
  if (!q0.point || q0.field_degree != 1)
    throw UnsupportedExtension("attractor box: the fixed point is not rational (degree " +
                               std::to_string(q0.field_degree) + ")");
  AttractorBox box;
  box.q0 = *q0.point;
  box.degree = bd.degree;
  const Integer& qx = (*q0.point)[0];
  const Integer& qy = (*q0.point)[1];
  if (qx != 0)
    box.conj = {Rational(qx), Rational(0), Rational(qy), Rational(1)};
  else
    box.conj = {Rational(0), Rational(1), Rational(1), Rational(0)};
  box.map = conjugate(bd.map, box.conj);
  bool case3 = (bd.kind == BoundaryCase::Case3a || bd.kind == BoundaryCase::Case3b) && qx != 0 && qy == 0;
  const auto& hom = box.map.components();
  Monomial xd;
  xd.set(0, static_cast<unsigned>(bd.degree));
  if (case3) {
    box.shape = BoxShape::Case3;
    int k = -1;
    for (const auto& [m, c] : bd.H.terms()) k = std::max(k, static_cast<int>(m[0]));
    box.h_index = k;
  } else {
    if (hom[0].coefficient(xd) == 0 || hom[1].coefficient(xd) != 0)
      throw InvalidArgument("attractor box: " + box.q0.to_string() + " is not an attracting fixed point at infinity");
    box.shape = BoxShape::Attracting;
  }
  return box;
}

}  // namespace

std::string case_name(BoundaryCase c) {
  switch (c) {
    case BoundaryCase::Case1: return "Case1";
    case BoundaryCase::Case2a: return "Case2a";
    case BoundaryCase::Case2b: return "Case2b";
    case BoundaryCase::Case3a: return "Case3a";
    case BoundaryCase::Case3b: return "Case3b";
    case BoundaryCase::Case3Unreduced: return "Case3-unreduced";
    case BoundaryCase::DegenerateFZero: return "degenerate-F-zero";
  }
  return "";
}

BoundaryData boundary_analyze(const SelfMap& f, bool allow_swap) {
  if (f.is_projective() || f.dim() != 2) throw InvalidArgument("boundary_analyze: expected a self-map of A^2");
  if (f.degree() < 2) throw InvalidArgument("boundary_analyze: degree must be at least 2");
  BoundaryData bd;
  bd.map = f;
  bd.degree = f.degree();
  bd.vars = f.variables();
  auto split = [&](const MultiPoly& hom, MultiPoly& top, MultiPoly& rest) {
    top = MultiPoly(bd.vars);
    for (const auto& [m, c] : hom.terms())
      if (m[2] == 0) top.add_term(m, c);
    auto q = divide_exact(hom - top, MultiPoly::variable(bd.vars, 2));
    rest = *q;
  };
  split(f.components()[0], bd.F, bd.F1);
  split(f.components()[1], bd.G, bd.G1);
  if (bd.F.is_zero()) {
    if (bd.G.is_zero()) throw InvalidArgument("boundary_analyze: both leading forms vanish");
    if (!allow_swap) {
      bd.kind = BoundaryCase::DegenerateFZero;
      return bd;
    }
    auto swapped = boundary_analyze(swap_map(f), false);
    swapped.swapped = true;
    return swapped;
  }
  bd.H = poly_gcd(bd.F, bd.G);
  bd.F0 = *divide_exact(bd.F, bd.H);
  bd.G0 = bd.G.is_zero() ? MultiPoly(bd.vars) : *divide_exact(bd.G, bd.H);
  int e = bd.F0.degree();
  if (e >= 2) {
    bd.kind = BoundaryCase::Case1;
  } else if (e == 0) {
    std::vector<Rational> at{Rational(1), Rational(0), Rational(0)};
    bd.kind = bd.H.evaluate(at) == 0 ? BoundaryCase::Case2a : BoundaryCase::Case2b;
  } else {
    Monomial mx{1, 0, 0}, my{0, 1, 0};
    Rational alpha = bd.F0.coefficient(mx), gamma = bd.F0.coefficient(my);
    Rational beta = bd.G0.coefficient(mx), eps = bd.G0.coefficient(my);
    if (beta == 0 && gamma == 0 && eps != 0) {
      bd.kind = BoundaryCase::Case3a;
      bd.phi_a = alpha / eps;
    } else if (beta == 0 && alpha == eps && gamma != 0) {
      bd.kind = BoundaryCase::Case3b;
      bd.phi_b = gamma / alpha;
    } else {
      bd.kind = BoundaryCase::Case3Unreduced;
    }
  }
  return bd;
}

FixedPointsAtInfinity fixed_points_at_infinity(const BoundaryData& bd) {
  switch (bd.kind) {
    case BoundaryCase::Case1:
    case BoundaryCase::Case3a:
    case BoundaryCase::Case3b:
    case BoundaryCase::Case3Unreduced: break;
    default: throw InvalidArgument("fixed_points_at_infinity: phi is not a map of positive degree");
  }
  MultiPoly X = MultiPoly::variable(bd.vars, 0), Y = MultiPoly::variable(bd.vars, 1);
  MultiPoly B = bd.F0 * Y - bd.G0 * X;
  FixedPointsAtInfinity out;
  if (B.is_zero()) {
    out.everything_fixed = true;
    return out;
  }
  std::vector<std::string> tv{"t"};
  std::vector<MultiPoly> chart{MultiPoly::variable(tv, 0), MultiPoly::constant(tv, 1), MultiPoly::constant(tv, 0)};
  UPoly b = univariate_coefficients(B.substitute(chart), 0);
  upoly::trim(b);
  int at_inf = B.degree() - upoly::degree(b);
  if (at_inf > 0) {
    FixedPointAtInfinity q;
    q.point = ProjPoint({Integer(1), Integer(0)});
    q.multiplicity = static_cast<unsigned>(at_inf);
    out.points.push_back(q);
  }
  if (upoly::degree(b) > 0) {
    for (const auto& [fac, mult] : upoly::factor(b)) {
      FixedPointAtInfinity q;
      q.minpoly = upoly::primitive(fac);
      q.field_degree = upoly::degree(fac);
      q.multiplicity = mult;
      if (q.field_degree == 1) q.point = ProjPoint::from_rationals({-fac[0] / fac[1], Rational(1)});
      out.points.push_back(q);
    }
  }
  std::sort(out.points.begin(), out.points.end(), [](const auto& a, const auto& b) {
    if (a.field_degree != b.field_degree) return a.field_degree < b.field_degree;
    if (a.point && b.point) return *a.point < *b.point;
    return a.minpoly < b.minpoly;
  });
  return out;
}

std::string AttractorBox::describe() const {
  std::string ps = p.get_str();
  if (shape == BoxShape::Attracting) return "v_" + ps + "(x) < 0, v_" + ps + "(x) < v_" + ps + "(y)";
  std::string d = std::to_string(degree), d1 = std::to_string(degree - 1);
  return "v_" + ps + "(x) < v_" + ps + "(y) < 0, " + d + " v_" + ps + "(y) < " + d1 + " v_" + ps + "(x)";
}

bool AttractorBox::contains(const AffPoint& P) const {
  if (P.dim() != 2) throw InvalidArgument("attractor box: expected a point of A^2");
  long a = neg_val(P[0], p), b = neg_val(P[1], p);
  if (a == kNoValuation || a <= 0) return false;
  if (shape == BoxShape::Attracting) return b == kNoValuation || a > b;
  if (b == kNoValuation) return false;
  return a > b && b > 0 && static_cast<long>(degree) * b > static_cast<long>(degree - 1) * a;
}

AffPoint AttractorBox::to_box(const AffPoint& P) const {
  auto mi = inverse2(conj);
  return AffPoint({mi[0] * P[0] + mi[1] * P[1], mi[2] * P[0] + mi[3] * P[1]});
}

AttractorBox attractor_box(const BoundaryData& bd, const FixedPointAtInfinity& q0, long prime_bound) {
  AttractorBox box = make_box(bd, q0);
  for (Integer p = 2; p <= prime_bound; p = next_prime(p)) {
    if (coefficients_are_units(box.map.affine_components(), p)) {
      box.p = p;
      return box;
    }
  }
  throw ResourceLimit("attractor box: no admissible prime below " + std::to_string(prime_bound));
}

AttractorBox attractor_box_at(const BoundaryData& bd, const FixedPointAtInfinity& q0, const Integer& p) {
  if (!is_prime(p)) throw InvalidArgument("attractor box: " + p.get_str() + " is not prime");
  AttractorBox box = make_box(bd, q0);
  if (!coefficients_are_units(box.map.affine_components(), p))
    throw InvalidArgument("attractor box: some coefficient is not a unit at " + p.get_str());
  box.p = p;
  return box;
}

std::vector<AffPoint> box_samples(const AttractorBox& box, std::size_t count) {
  std::vector<Integer> units;
  for (Integer c = 1; units.size() < 8; ++c)
    if (c % box.p != 0) {
      units.push_back(c);
      units.push_back(-c);
    }
  std::vector<std::pair<long, long>> sig;
  long d = box.degree;
  for (long a = 1; a <= 12; ++a)
    for (long b = -1; b < a; ++b) {
      bool ok = box.shape == BoxShape::Attracting ? true : (b > 0 && d * b > (d - 1) * a);
      if (ok) sig.emplace_back(a, b);
    }
  std::vector<AffPoint> out;
  Rational pr(box.p);
  for (std::size_t i = 0; i < units.size() && out.size() < count; ++i)
    for (std::size_t j = 0; j < units.size() && out.size() < count; ++j)
      for (std::size_t s = (i * units.size() + j) % sig.size(), t = 0; t < 2 && out.size() < count; ++t) {
        const auto& [a, b] = sig[(s + t * 7) % sig.size()];
        AffPoint P({pow(pr, -a) * units[i], pow(pr, -b) * units[j]});
        if (box.contains(P)) out.push_back(std::move(P));
      }
  return out;
}

LambdaReport lambda_growth_report(const AttractorBox& box, const AffPoint& P, int n) {
  if (n < 0) throw InvalidArgument("lambda report: negative depth");
  if (!box.contains(P)) throw InvalidArgument("lambda report: " + P.to_string() + " is not in U (" + box.describe() + ")");
  LambdaReport r;
  AffPoint cur = P;
  std::vector<long> xs;
  for (int k = 0; k <= n; ++k) {
    long a = neg_val(cur[0], box.p), b = neg_val(cur[1], box.p);
    xs.push_back(a);
    r.y_m.push_back(b);
    r.m.push_back(std::max({0L, a, b == kNoValuation ? 0L : b}));
    if (k < n) cur = box.map.evaluate(cur);
  }
  long d = box.degree;
  if (box.shape == BoxShape::Attracting) {
    r.law = "m_k = " + std::to_string(d) + "^k m_0";
    long expect = r.m[0];
    for (int k = 0; k <= n; ++k, expect *= d)
      if (r.m[static_cast<std::size_t>(k)] != expect) r.law_holds = false;
  } else {
    long s = xs[0] - r.y_m[0];
    r.law = "s = v(y) - v(x) constant, R' = " + std::to_string(d) + " R + " + std::to_string(box.h_index) + " s";
    for (int k = 0; k <= n; ++k) {
      auto i = static_cast<std::size_t>(k);
      if (r.y_m[i] == kNoValuation || xs[i] - r.y_m[i] != s) r.law_holds = false;
      if (k > 0 && r.y_m[i] != d * r.y_m[i - 1] + box.h_index * s) r.law_holds = false;
    }
  }
  return r;
}

SelfMap NormalFormQuadratic::map() const {
  std::vector<std::string> vars{"x", "y"};
  MultiPoly x = MultiPoly::variable(vars, 0), y = MultiPoly::variable(vars, 1);
  auto c = [&](std::size_t i) { return MultiPoly::constant(vars, params.at(i)); };
  std::size_t want = which == Which::N32 ? 3 : 2;
  if (params.size() != want) throw InvalidArgument("normal form " + name() + ": expected " + std::to_string(want) + " parameters");
  switch (which) {
    case Which::N11: return SelfMap::affine({y + c(0), x * y + c(1)});
    case Which::N31: return SelfMap::affine({y, x * x + params[0] * x + c(1)});
    case Which::N32:
      if (params[0] == 0) throw InvalidArgument("normal form 3.2: a must be nonzero");
      return SelfMap::affine({params[0] * y + c(1), x * (x - y) + c(2)});
  }
  throw InvalidArgument("unknown normal form");
}

std::string NormalFormQuadratic::name() const {
  switch (which) {
    case Which::N11: return "1.1";
    case Which::N31: return "3.1";
    case Which::N32: return "3.2";
  }
  return "";
}

NormalFormQuadratic::Which parse_normal_form(const std::string& name) {
  if (name == "1.1") return NormalFormQuadratic::Which::N11;
  if (name == "3.1") return NormalFormQuadratic::Which::N31;
  if (name == "3.2") return NormalFormQuadratic::Which::N32;
  throw InvalidArgument("unknown normal form '" + name + "' (expected 1.1, 3.1 or 3.2)");
}

std::string normal_form_region(NormalFormQuadratic::Which which) {
  switch (which) {
    case NormalFormQuadratic::Which::N11: return "v(x) = v(y) < 0";
    case NormalFormQuadratic::Which::N31: return "v(x) < 0, v(x) < v(y)";
    case NormalFormQuadratic::Which::N32: return "v(y) < v(x) < 0";
  }
  return "";
}

std::pair<long, long> signature(const AffPoint& P, const Integer& p) {
  if (P.dim() != 2 || P[0] == 0 || P[1] == 0) throw InvalidArgument("signature: coordinates must be nonzero");
  return {neg_val(P[0], p), neg_val(P[1], p)};
}

FamilyResult quad_normal_family(const NormalFormQuadratic& nf, const Integer& p, std::size_t k,
                                const std::vector<MultiPoly>& avoid) {
  if (k < 1) throw InvalidArgument("quad family: size must be at least 1");
  if (!is_prime(p)) throw InvalidArgument("quad family: p must be prime");
  nf.map();  // validates the parameters
  for (const auto& c : nf.params)
    if (c != 0 && !is_unit_at(c, p))
      throw InvalidArgument("quad family: parameter " + c.get_str() + " is not a unit at " + p.get_str());
  FamilyResult out;
  out.scheme = Scheme::PadicInvariant;
  for (const auto& g : avoid) out.avoided.push_back({g.to_string(), 0});
  const std::vector<Integer> golden{Integer(-1), Integer(-1), Integer(1)};  // t^2 - t - 1

  if (nf.which == NormalFormQuadratic::Which::N31) {
    std::vector<Integer> ls;
    while (ls.size() < k) {
      Integer l = ls.empty() ? Integer(1) : lem_num_solver(Rational(2), false, ls).l;
      long lv = l.get_si();
      auto s = padic_box_sampler(p, {-lv, 0}, avoid);
      out.examined += s.examined;
      std::size_t j = ls.size();
      for (std::size_t i = 0; i < j; ++i) {
        Json subs = Json::array();
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            DisjointnessCertificate c =
                a != b ? padic_invariant_certificate(p, "box", a, b)
                       : DisjointnessCertificate{Scheme::PadicInvariant,
                                                 Json{{"kind", "ratio-valuation"},
                                                      {"p", l.get_str()},
                                                      {"delta", "2"},
                                                      {"exponent", "1"},
                                                      {"l_x", Integer(ls[i] << a).get_str()},
                                                      {"l_y", Integer(l << b).get_str()}}};
            subs.push_back(Json{{"a", std::to_string(a)}, {"b", std::to_string(b)}, {"payload", c.payload}});
          }
        out.pairs.push_back({i, j, {Scheme::PadicInvariant, Json{{"reduction", "iterate"}, {"m", "2"}, {"pairs", subs}}}});
      }
      Json pj = point_json(s.point);
      pj["level"] = l.get_str();
      out.points.push_back(pj);
      out.maximality.push_back(Json{{"p", p.get_str()}, {"region", normal_form_region(nf.which)},
                                    {"A", std::to_string(lv)}, {"B", "0"}});
      ls.push_back(l);
    }
    out.complete = true;
    return out;
  }

  bool n11 = nf.which == NormalFormQuadratic::Which::N11;
  for (long l = 1; out.points.size() < k; ++l) {
    long A = l, B = n11 ? l : 2 * l;
    auto s = padic_box_sampler(p, {-A, -B}, avoid);
    out.examined += s.examined;
    std::size_t j = out.points.size();
    for (std::size_t i = 0; i < j; ++i)
      out.pairs.push_back({i, j, padic_level_certificate(p, golden, static_cast<long>(i) + 1, l)});
    Json pj = point_json(s.point);
    pj["level"] = std::to_string(l);
    out.points.push_back(pj);
    out.maximality.push_back(Json{{"p", p.get_str()},
                                  {"region", normal_form_region(nf.which)},
                                  {"A", std::to_string(A)},
                                  {"B", std::to_string(B)}});
  }
  out.complete = true;
  return out;
}

FamilyResult case3_family(const BoundaryData& bd, const Integer& p, std::size_t k, const std::vector<MultiPoly>& avoid) {
  if (bd.kind != BoundaryCase::Case3a && bd.kind != BoundaryCase::Case3b)
    throw InvalidArgument("case3_family: map is " + case_name(bd.kind) + ", not Case3a/Case3b");
  if (k < 1) throw InvalidArgument("case3_family: size must be at least 1");
  FixedPointAtInfinity q0;
  q0.point = ProjPoint({Integer(1), Integer(0)});
  AttractorBox box = attractor_box_at(bd, q0, p);
  long d = bd.degree;
  FamilyResult out;
  out.scheme = Scheme::PadicInvariant;
  for (const auto& g : avoid) out.avoided.push_back({g.to_string(), 0});
  for (long s = 1; static_cast<std::size_t>(s) <= k; ++s) {
    long B = (d - 1) * s + 1, A = B + s;
    auto smp = padic_box_sampler(p, {-A, -B}, avoid);
    out.examined += smp.examined;
    if (!box.contains(smp.point)) throw Error("case3_family: sample left the box");
    std::size_t j = out.points.size();
    for (std::size_t i = 0; i < j; ++i)
      out.pairs.push_back({i, j, padic_invariant_certificate(p, "v(y) - v(x)", static_cast<long>(i) + 1, s)});
    Json pj = point_json(smp.point);
    pj["s"] = std::to_string(s);
    out.points.push_back(pj);
    out.maximality.push_back(
        Json{{"p", p.get_str()}, {"region", box.describe()}, {"A", std::to_string(A)}, {"B", std::to_string(B)}});
  }
  out.complete = true;
  return out;
}

}  // namespace arithdyn
