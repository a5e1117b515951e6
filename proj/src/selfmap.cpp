#include "arithdyn/selfmap.hpp"

#include <algorithm>

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {

std::vector<std::vector<std::pair<Monomial, Integer>>> integral_form(const std::vector<MultiPoly>& comps) {
  std::vector<std::vector<std::pair<Monomial, Integer>>> out;
  for (const auto& c : comps) {
    Integer l = c.denominator_lcm();
    std::vector<std::pair<Monomial, Integer>> terms;
    for (const auto& [m, v] : c.terms()) terms.emplace_back(m, v.get_num() * (l / v.get_den()));
    out.push_back(std::move(terms));
  }
  return out;
}

}  // namespace

MultiPoly common_factor(const std::vector<MultiPoly>& components) {
  if (components.empty()) throw InvalidArgument("map without components");
  // Cheapest components first, so a coprime pair ends the search early.
  std::vector<const MultiPoly*> order;
  for (const auto& c : components) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](auto a, auto b) { return a->size() < b->size(); });
  MultiPoly g(components[0].variables());
  for (const MultiPoly* c : order) {
    if (c->is_zero()) continue;
    g = g.is_zero() ? c->normalized() : poly_gcd(g, *c);
    if (g.is_constant()) return MultiPoly::constant(components[0].variables(), 1);
  }
  if (g.is_zero()) throw InvalidArgument("all components are zero");
  return g;
}

SelfMap SelfMap::projective(std::vector<MultiPoly> components) {
  if (components.size() < 2) throw InvalidArgument("a map of P^N needs at least two components");
  std::size_t nv = components[0].nvars();
  if (nv != components.size()) throw InvalidArgument("projective map: component count must equal variable count");
  int d = -1;
  for (const auto& c : components) {
    if (c.variables() != components[0].variables())
      throw InvalidArgument("projective map: components over different variables");
    if (!c.is_homogeneous()) throw InvalidArgument("projective map: component " + c.to_string() + " is not homogeneous");
    if (c.is_zero()) continue;
    if (d >= 0 && c.degree() != d) throw InvalidArgument("projective map: components of different degrees");
    d = c.degree();
  }
  if (d < 0) throw InvalidArgument("projective map: all components are zero");
  SelfMap f;
  f.ambient_ = Ambient::Projective;
  f.dim_ = nv - 1;
  f.removed_ = common_factor(components);
  if (!f.removed_.is_constant()) {
    for (auto& c : components)
      if (!c.is_zero()) c = *divide_exact(c, f.removed_);
    d -= f.removed_.degree();
  }
  f.degree_ = d;
  f.hom_ = std::move(components);
  f.integral_ = integral_form(f.hom_);
  return f;
}

SelfMap SelfMap::affine(std::vector<MultiPoly> components, const std::string& hom_var) {
  if (components.empty()) throw InvalidArgument("affine map without components");
  std::size_t nv = components[0].nvars();
  if (nv != components.size()) throw InvalidArgument("affine map: component count must equal variable count");
  int d = 0;
  for (const auto& c : components) {
    if (c.variables() != components[0].variables())
      throw InvalidArgument("affine map: components over different variables");
    d = std::max(d, c.degree());
  }
  if (d < 1) throw InvalidArgument("affine map: constant map");
  for (const auto& v : components[0].variables())
    if (v == hom_var) throw InvalidArgument("affine map: homogenizing variable clashes with " + v);
  SelfMap f;
  f.ambient_ = Ambient::Affine;
  f.dim_ = nv;
  f.degree_ = d;
  for (const auto& c : components) f.hom_.push_back(homogenize(c, hom_var, d));
  std::vector<std::string> hv = components[0].variables();
  hv.push_back(hom_var);
  Monomial wd;
  wd.set(nv, static_cast<unsigned>(d));
  f.hom_.push_back(MultiPoly::term(hv, wd, 1));
  f.affine_ = std::move(components);
  f.integral_ = integral_form(f.hom_);
  f.removed_ = MultiPoly::constant(hv, 1);
  return f;
}

const std::vector<std::string>& SelfMap::variables() const { return hom_[0].variables(); }

std::optional<ProjPoint> SelfMap::evaluate(const ProjPoint& x) const {
  if (x.size() != hom_.size()) throw InvalidArgument("evaluate: point dimension does not match the map");
  std::vector<std::vector<Integer>> pw(x.size());
  auto power = [&](std::size_t i, unsigned e) -> const Integer& {
    auto& t = pw[i];
    if (t.empty()) t.push_back(1);
    while (t.size() <= e) t.push_back(t.back() * x[i]);
    return t[e];
  };
  std::vector<Integer> out;
  out.reserve(hom_.size());
  bool any = false;
  for (const auto& comp : integral_) {
    Integer s = 0;
    for (const auto& [m, c] : comp) {
      Integer t = c;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (m[i]) t *= power(i, m[i]);
      s += t;
    }
    if (s != 0) any = true;
    out.push_back(std::move(s));
  }
  if (!any) return std::nullopt;
  return ProjPoint(std::move(out));
}

AffPoint SelfMap::evaluate(const AffPoint& x) const {
  if (ambient_ != Ambient::Affine) throw InvalidArgument("evaluate: affine point for a projective map");
  if (x.dim() != dim_) throw InvalidArgument("evaluate: point dimension does not match the map");
  std::vector<Rational> out;
  for (const auto& c : affine_) out.push_back(c.evaluate(x.coords()));
  return AffPoint(std::move(out));
}

std::string SelfMap::to_string() const {
  std::string s = is_projective() ? "[" : "(";
  const auto& comps = is_projective() ? hom_ : affine_;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i) s += is_projective() ? " : " : ", ";
    s += comps[i].to_string();
  }
  return s + (is_projective() ? "]" : ")");
}

}  // namespace arithdyn
