#include "arithdyn/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "arithdyn/linear.hpp"

namespace arithdyn {

namespace {

using IntTerms = std::vector<std::pair<Monomial, Integer>>;

IntTerms int_terms(const MultiPoly& p) {
  IntTerms t;
  for (const auto& [m, c] : p.terms()) {
    if (c.get_den() != 1) throw InvalidArgument("expected integer coefficients");
    t.emplace_back(m, c.get_num());
  }
  return t;
}

std::vector<Integer> eval_int(const std::vector<IntTerms>& comps, const std::vector<Integer>& x) {
  std::vector<std::vector<Integer>> pw(x.size());
  auto power = [&](std::size_t i, unsigned e) -> const Integer& {
    auto& t = pw[i];
    if (t.empty()) t.push_back(1);
    while (t.size() <= e) t.push_back(t.back() * x[i]);
    return t[e];
  };
  std::vector<Integer> out;
  for (const auto& comp : comps) {
    Integer s = 0, t;
    for (const auto& [m, c] : comp) {
      t = c;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (m[i]) t *= power(i, m[i]);
      s += t;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Integer> eval_mod(const std::vector<IntTerms>& comps, const std::vector<Integer>& x, const Integer& mod) {
  std::vector<std::vector<Integer>> pw(x.size());
  auto power = [&](std::size_t i, unsigned e) -> const Integer& {
    auto& t = pw[i];
    if (t.empty()) t.push_back(1);
    while (t.size() <= e) {
      Integer v = t.back() * x[i];
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
      t.push_back(std::move(v));
    }
    return t[e];
  };
  std::vector<Integer> out;
  for (const auto& comp : comps) {
    Integer s = 0, t;
    for (const auto& [m, c] : comp) {
      t = c;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (m[i]) {
          t *= power(i, m[i]);
          mpz_mod(t.get_mpz_t(), t.get_mpz_t(), mod.get_mpz_t());
        }
      s += t;
    }
    mpz_mod(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
    out.push_back(std::move(s));
  }
  return out;
}

Integer coefficient_l1(const MultiPoly& p) {
  Integer s = 0;
  for (const auto& [m, c] : p.terms()) s += abs(c.get_num());
  return s;
}

Integer max_abs(const std::vector<Integer>& v) {
  Integer m = 0;
  for (const auto& c : v)
    if (abs(c) > m) m = abs(c);
  return m;
}

std::size_t max_bits(const std::vector<Integer>& v) {
  std::size_t b = 0;
  for (const auto& c : v) b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
  return b;
}

// All exponent vectors of total degree `deg` in `n` variables, lex order.
std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned deg) {
  std::vector<Monomial> out;
  Monomial m;
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == n) {
      m.set(i, left);
      out.push_back(m);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      m.set(i, e);
      rec(i + 1, left - e);
    }
    m.set(i, 0);
  };
  rec(0, deg);
  return out;
}

}  // namespace

std::vector<MultiPoly> primitive_components(const std::vector<MultiPoly>& comps) {
  Integer l = 1, g = 0;
  for (const auto& c : comps) l = lcm(l, c.denominator_lcm());
  for (const auto& c : comps)
    for (const auto& [m, v] : c.terms()) {
      Integer n = v.get_num() * (l / v.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
  if (g == 0) throw InvalidArgument("all components are zero");
  Rational scale(l, g);
  scale.canonicalize();
  std::vector<MultiPoly> out;
  for (const auto& c : comps) out.push_back(c * scale);
  return out;
}

MorphismCertificate::MorphismCertificate(const SelfMap& map, Cofactors cofactors)
    : map_(map), cof_(std::move(cofactors)) {
  if (!map.is_projective()) throw InvalidArgument("morphism certificate: map must be projective");
  integral_ = primitive_components(map.components());
  std::size_t n = integral_.size();
  const auto& vars = map.variables();
  if (cof_.g.size() != n || cof_.r.size() != n) throw InvalidArgument("morphism certificate: wrong cofactor shape");
  Interval loss;
  Integer l = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (cof_.g[i].size() != n) throw InvalidArgument("morphism certificate: wrong cofactor shape");
    if (cof_.r[i] <= 0) throw InvalidArgument("morphism certificate: R_i must be positive");
    MultiPoly lhs(vars);
    Integer s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const MultiPoly& g = cof_.g[i][j];
      if (g.variables() != vars || !g.is_integral()) throw InvalidArgument("morphism certificate: bad cofactor");
      lhs += g * integral_[j];
      s += coefficient_l1(g);
    }
    Monomial m;
    m.set(i, cof_.exponent);
    if (lhs != MultiPoly::term(vars, m, Rational(cof_.r[i])))
      throw InvalidArgument("morphism certificate: cofactor identity " + std::to_string(i) + " fails");
    if (s == 0) throw InvalidArgument("morphism certificate: zero cofactors");
    Interval li = log_of(Rational(s, cof_.r[i]));
    loss = i == 0 ? li : max(loss, li);
    l = lcm(l, cof_.r[i]);
  }
  Integer cp = 0;
  for (const auto& c : integral_) cp = std::max(cp, coefficient_l1(c));
  c_plus_ = log_of(cp);
  arch_loss_ = loss;
  c_minus_ = max(Interval(0.0), log_of(l) + loss);
  if (l > 1)
    for (const auto& [p, e] : factor(l)) bad_primes_.emplace_back(p, e);
}

std::variant<MorphismCertificate, NotAMorphism> certify_morphism(const SelfMap& f, const MorphismBudget& budget) {
  if (!f.is_projective()) throw InvalidArgument("certify_morphism: map must be projective");
  if (!f.removed_factor().is_constant())
    return NotAMorphism{"components share the factor " + f.removed_factor().to_string()};
  std::size_t nv = f.components().size();
  int d = f.degree();
  const auto& vars = f.variables();
  auto comps = primitive_components(f.components());
  unsigned e = static_cast<unsigned>((nv) * (d - 1) + 1);
  auto cof_monos = monomials_of_degree(nv, e - static_cast<unsigned>(d));
  auto row_monos = monomials_of_degree(nv, e);
  std::size_t unknowns = cof_monos.size() * nv;
  if (unknowns > budget.max_unknowns) throw ResourceLimit("certify_morphism: linear system too large");
  std::map<Monomial, std::size_t, std::greater<Monomial>> row_of;
  for (std::size_t r = 0; r < row_monos.size(); ++r) row_of[row_monos[r]] = r;
  Matrix a(row_monos.size(), std::vector<Rational>(unknowns));
  for (std::size_t j = 0; j < nv; ++j)
    for (std::size_t k = 0; k < cof_monos.size(); ++k)
      for (const auto& [m, c] : comps[j].terms()) a[row_of.at(m * cof_monos[k])][j * cof_monos.size() + k] += c;

  Cofactors cof;
  cof.exponent = e;
  for (std::size_t i = 0; i < nv; ++i) {
    Monomial target;
    target.set(i, e);
    std::vector<Rational> b(row_monos.size());
    b[row_of.at(target)] = 1;
    auto sol = exact_linear_solve(a, b);
    if (!sol) return NotAMorphism{vars[i] + "^" + std::to_string(e) + " is not in the ideal of the components"};
    Integer den = 1;
    for (const auto& v : *sol) den = lcm(den, v.get_den());
    Integer g = den;
    for (const auto& v : *sol) {
      Integer n = v.get_num() * (den / v.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    std::vector<MultiPoly> row;
    for (std::size_t j = 0; j < nv; ++j) {
      MultiPoly gij(vars);
      for (std::size_t k = 0; k < cof_monos.size(); ++k) {
        const Rational& v = (*sol)[j * cof_monos.size() + k];
        if (v != 0) gij.add_term(cof_monos[k], Rational(v.get_num() * (den / v.get_den()) / g));
      }
      row.push_back(std::move(gij));
    }
    cof.g.push_back(std::move(row));
    cof.r.push_back(den / g);
  }
  return MorphismCertificate(f, std::move(cof));
}

CanonicalHeightValue canonical_height_at_depth(const MorphismCertificate& cert, const ProjPoint& x, int depth,
                                               const HeightBudget& budget) {
  int d = cert.degree();
  if (d < 2) throw InvalidArgument("canonical height needs degree at least 2");
  if (depth < 0) throw InvalidArgument("canonical height: negative depth");
  if (x.size() != cert.integral_components().size()) throw InvalidArgument("canonical height: dimension mismatch");
  std::vector<IntTerms> comps;
  for (const auto& c : cert.integral_components()) comps.push_back(int_terms(c));

  const Interval inv_d = Interval(1.0) / Interval(static_cast<double>(d));
  Interval value = weil_height(x);
  Interval scale(1.0);
  std::vector<Integer> cur = x.coords();
  int k = 0;
  Integer lcm_r = 1;
  for (const auto& r : cert.cofactors().r) lcm_r = lcm(lcm_r, r);

  // Exact phase.
  for (; k < depth && max_bits(cur) <= budget.exact_bits; ++k) {
    auto y = eval_int(comps, cur);
    Integer g = 0;
    for (const auto& v : y) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 0 || lcm_r % g != 0) throw Error("canonical height: orbit contradicts the morphism certificate");
    Rational ratio(max_abs(y), pow(max_abs(cur), static_cast<unsigned long>(d)));
    ratio.canonicalize();
    Interval term = log_of(ratio, 1e-15) - log_of(g);
    scale *= inv_d;
    value += term * scale;
    for (auto& v : y) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    cur = std::move(y);
  }

  if (k < depth) {
    int rem = depth - k;
    std::vector<Interval> terms(static_cast<std::size_t>(rem), Interval(0.0));
    // Archimedean part on the normalized real point.
    const Interval lower = -cert.arch_loss();
    const Interval upper = cert.c_plus();
    std::vector<std::vector<std::pair<Monomial, Interval>>> icomps;
    for (const auto& comp : comps) {
      std::vector<std::pair<Monomial, Interval>> t;
      for (const auto& [m, c] : comp) t.emplace_back(m, from_integer(c));
      icomps.push_back(std::move(t));
    }
    std::size_t n = cur.size();
    std::size_t jmax = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (abs(cur[i]) > abs(cur[jmax])) jmax = i;
    std::vector<Interval> u(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == jmax) {
        u[i] = Interval(1.0);
        continue;
      }
      Rational q(cur[i], cur[jmax]);
      q.canonicalize();
      u[i] = from_rational(q);
    }
    bool lost = false;
    for (int t = 0; t < rem; ++t) {
      if (lost) {
        terms[t] = Interval(lower.lo(), upper.hi());
        continue;
      }
      std::vector<Interval> fu;
      for (const auto& comp : icomps) {
        Interval s(0.0);
        for (const auto& [m, c] : comp) {
          Interval v = c;
          for (std::size_t i = 0; i < n; ++i)
            if (m[i]) v *= pow(u[i], static_cast<int>(m[i]));
          s += v;
        }
        fu.push_back(s);
      }
      Interval mf = abs(fu[0]), mu = abs(u[0]);
      for (std::size_t i = 1; i < n; ++i) {
        mf = max(mf, abs(fu[i]));
        mu = max(mu, abs(u[i]));
      }
      Interval a(lower.lo(), upper.hi());
      if (mf.hi() > 0) {
        Interval raw = log(mf) - Interval(static_cast<double>(d)) * log(mu);
        double lo = std::max(raw.lo(), lower.lo()), hi = std::min(raw.hi(), upper.hi());
        if (lo > hi) throw Error("canonical height: archimedean term outside the certified bounds");
        a = Interval(lo, hi);
      }
      terms[t] = a;
      std::size_t j = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (std::abs(fu[i].mid()) > std::abs(fu[j].mid())) j = i;
      if (fu[j].contains(0.0)) {
        lost = true;
        continue;
      }
      for (std::size_t i = 0; i < n; ++i) {
        u[i] = i == j ? Interval(1.0) : fu[i] / fu[j];
        if (!(u[i].width() <= 1e-6)) lost = true;
      }
    }
    // Non-archimedean part at each bad prime, iterating modulo p^K.
    for (const auto& [p, vl] : cert.bad_primes()) {
      long prec = static_cast<long>(vl) * (rem + 1) + 1;
      Integer mod = pow(p, static_cast<unsigned long>(prec));
      std::vector<Integer> xs = cur;
      for (auto& v : xs) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
      Interval lp = log_of(p);
      for (int t = 0; t < rem; ++t) {
        auto y = eval_mod(comps, xs, mod);
        long e = prec;
        for (const auto& v : y)
          if (v != 0) e = std::min(e, valuation(v, p).value());
        if (e > static_cast<long>(vl)) throw Error("canonical height: valuation exceeds the certified bound");
        if (e > 0) {
          Integer pe = pow(p, static_cast<unsigned long>(e));
          for (auto& v : y) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), pe.get_mpz_t());
          prec -= e;
          mod = pow(p, static_cast<unsigned long>(prec));
          for (auto& v : y) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
          terms[t] -= Interval(static_cast<double>(e)) * lp;
        }
        xs = std::move(y);
      }
    }
    for (int t = 0; t < rem; ++t) {
      scale *= inv_d;
      value += terms[t] * scale;
    }
  }

  Interval dn = pow(Interval(static_cast<double>(d)), depth) * Interval(static_cast<double>(d - 1));
  value += Interval(-cert.c_minus().hi(), cert.c_plus().hi()) / dn;
  CanonicalHeightValue out;
  out.value = value;
  out.depth = depth;
  out.degree = d;
  out.c_plus = cert.c_plus();
  out.c_minus = cert.c_minus();
  return out;
}

CanonicalHeightValue canonical_height(const MorphismCertificate& cert, const ProjPoint& x, double target_width,
                                      const HeightBudget& budget) {
  if (!(target_width > 0)) throw InvalidArgument("canonical height: target width must be positive");
  int d = cert.degree();
  if (d < 2) throw InvalidArgument("canonical height needs degree at least 2");
  double c = cert.c_plus().hi() + cert.c_minus().hi();
  std::optional<CanonicalHeightValue> last;
  for (int n = 0; n <= budget.max_depth; ++n) {
    double bound = c / (std::pow(static_cast<double>(d), n) * (d - 1));
    if (bound > target_width && n < budget.max_depth) continue;
    last = canonical_height_at_depth(cert, x, n, budget);
    if (last->width() <= target_width) return *last;
  }
  throw HeightBudgetExceeded("canonical height: depth budget exhausted before the target width", *last);
}

std::optional<PositivityProof> positive_canonical_height(const MorphismCertificate& cert, const ProjPoint& x,
                                                         int max_depth) {
  int d = cert.degree();
  if (d < 2) throw InvalidArgument("canonical height needs degree at least 2");
  ProjPoint cur = x;
  Interval dn(1.0);
  for (int n = 0; n <= max_depth; ++n) {
    Interval h = weil_height(cur);
    Interval margin = h * Interval(static_cast<double>(d - 1)) - cert.c_minus();
    if (margin.lo() > 0) {
      PositivityProof p;
      p.depth = n;
      p.iterate = cur;
      p.height = h;
      p.lower = margin / (dn * Interval(static_cast<double>(d - 1)));
      return p;
    }
    if (n == max_depth || max_bits(cur.coords()) > (1u << 20)) break;
    auto next = cert.map().evaluate(cur);
    if (!next) throw Error("positive_canonical_height: indeterminate point for a certified morphism");
    cur = std::move(*next);
    dn *= Interval(static_cast<double>(d));
  }
  return std::nullopt;
}

ArithDegreeEstimate alpha_estimate(const SelfMap& f, const ProjPoint& x, int n, const MorphismCertificate* cert) {
  if (n < 1) throw InvalidArgument("alpha_estimate: depth must be positive");
  ArithDegreeEstimate out;
  ProjPoint cur = x;
  for (int k = 0; k <= n; ++k) {
    out.samples.emplace_back(k, weil_height(cur));
    if (k == n) break;
    auto next = f.evaluate(cur);
    if (!next) throw TruncatedOrbit("alpha_estimate: orbit reaches the indeterminacy locus", out.samples);
    cur = std::move(*next);
  }
  auto hh = [&](int k) { return Interval(1.0) + out.samples[static_cast<std::size_t>(k)].second; };
  int w = n / 2;
  if (w >= 2) w -= w % 2;
  if (w < 1) w = 1;
  std::vector<Interval> rates;
  for (int k = std::max(w, n - 1); k <= n; ++k)
    rates.push_back(exp((log(hh(k)) - log(hh(k - w))) / Interval(static_cast<double>(w))));
  out.lower = rates[0];
  out.upper = rates[0];
  for (const auto& r : rates) {
    out.lower = min(out.lower, r);
    out.upper = max(out.upper, r);
  }
  const Interval& hprev = out.samples[static_cast<std::size_t>(n - 1)].second;
  if (hprev.lo() > 0) out.last_ratio = out.samples.back().second / hprev;
  if (cert && positive_canonical_height(*cert, x)) out.exact = cert->degree();
  return out;
}

}  // namespace arithdyn
