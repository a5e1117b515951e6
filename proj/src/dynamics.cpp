#include "arithdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "arithdyn/errors.hpp"

namespace arithdyn {

Orbit orbit(const SelfMap& f, const ProjPoint& x, std::size_t n) {
  Orbit o;
  o.points.push_back(x);
  for (std::size_t k = 0; k < n; ++k) {
    auto y = f.evaluate(o.points.back());
    if (!y) {
      o.truncated = true;
      break;
    }
    o.points.push_back(std::move(*y));
  }
  return o;
}

std::vector<AffPoint> orbit(const SelfMap& f, const AffPoint& x, std::size_t n) {
  std::vector<AffPoint> o{x};
  for (std::size_t k = 0; k < n; ++k) o.push_back(f.evaluate(o.back()));
  return o;
}

SelfMap compose(const SelfMap& f, const SelfMap& g) {
  if (f.ambient() != g.ambient() || f.dim() != g.dim())
    throw InvalidArgument("compose: maps on different spaces");
  if (f.ambient() == Ambient::Affine) {
    std::vector<MultiPoly> out;
    const auto& inner = g.affine_components();
    for (const auto& c : f.affine_components()) {
      out.push_back(c.substitute(inner));
    }
    // The homogenized iterate has last component W^d, and the other
    // components cannot all be divisible by W, so there is no common factor.
    return SelfMap::affine(std::move(out), g.variables().back());
  }
  std::vector<MultiPoly> out;
  const auto& inner = g.components();
  for (const auto& c : f.components()) out.push_back(c.substitute(inner));
  return SelfMap::projective(std::move(out));
}

SelfMap iterate(const SelfMap& f, std::size_t n) {
  if (n == 0) throw InvalidArgument("iterate: n must be positive");
  SelfMap g = f;
  for (std::size_t k = 1; k < n; ++k) g = compose(f, g);
  return g;
}

DegreeSequence::DegreeSequence(std::vector<long> degrees) : degrees_(std::move(degrees)) {
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (degrees_[i] < 1) throw InvalidArgument("degree sequence entries must be positive");
    for (std::size_t j = 0; i + j + 1 < degrees_.size(); ++j) {
      // d_{(i+1)+(j+1)} <= d_{i+1} d_{j+1}
      if (degrees_[i + j + 1] > degrees_[i] * degrees_[j])
        throw Error("degree sequence violates submultiplicativity");
    }
  }
}

DegreeSequence degree_sequence(const SelfMap& f, std::size_t n, const DegreeBudget& budget) {
  if (n < 1) throw InvalidArgument("degree_sequence: n must be positive");
  std::vector<long> d{f.degree()};
  SelfMap g = f;
  for (std::size_t k = 2; k <= n; ++k) {
    const auto& comps = f.is_projective() ? g.components() : g.affine_components();
    for (const auto& c : comps)
      if (c.size() > budget.max_terms)
        throw ResourceLimit("degree_sequence: iterate " + std::to_string(k) + " exceeds the term budget",
                            static_cast<long>(k - 1));
    g = compose(f, g);
    d.push_back(g.degree());
  }
  return DegreeSequence(std::move(d));
}

DeltaEstimate delta_estimate(const DegreeSequence& seq) {
  if (seq.size() < 2) throw InvalidArgument("delta_estimate: need at least two degrees");
  Interval upper;
  bool first = true;
  for (std::size_t k = 1; k <= seq.size(); ++k) {
    Interval r;
    long dk = seq[k];
    // Exact k-th roots stay points when d_k is a perfect k-th power.
    long root = std::lround(std::pow(static_cast<double>(dk), 1.0 / static_cast<double>(k)));
    Integer p = pow(Integer(root), static_cast<unsigned long>(k));
    if (root >= 1 && p == dk)
      r = Interval(static_cast<double>(root));
    else
      r = exp(log(Interval(static_cast<double>(dk))) / Interval(static_cast<double>(k)));
    if (first || r.hi() < upper.hi() || (r.hi() == upper.hi() && r.lo() > upper.lo())) upper = r;
    first = false;
  }
  std::size_t n = seq.size();
  Interval heuristic = Interval(static_cast<double>(seq[n])) / Interval(static_cast<double>(seq[n - 1]));
  if (seq[n] % seq[n - 1] == 0) heuristic = Interval(static_cast<double>(seq[n] / seq[n - 1]));
  return {upper, heuristic, seq};
}

DeltaEstimate delta_estimate(const SelfMap& f, std::size_t n, const DegreeBudget& budget) {
  if (n < 2) throw InvalidArgument("delta_estimate: depth must be at least 2");
  return delta_estimate(degree_sequence(f, n, budget));
}

StabilityReport stability(const DegreeSequence& seq) {
  StabilityReport r;
  Integer dk = 1;
  for (std::size_t k = 1; k <= seq.size(); ++k) {
    dk *= seq[1];
    if (Integer(seq[k]) < dk) {
      r.stable = false;
      r.first_drop = k;
      break;
    }
  }
  return r;
}

StabilityReport is_stable_upto(const SelfMap& f, std::size_t n, const DegreeBudget& budget) {
  if (n < 2) throw InvalidArgument("is_stable_upto: depth must be at least 2");
  return stability(degree_sequence(f, n, budget));
}

}  // namespace arithdyn
