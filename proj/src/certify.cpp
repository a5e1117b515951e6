#include "arithdyn/certify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "arithdyn/arith.hpp"

namespace arithdyn {

namespace {

Json int_list(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

std::vector<Integer> parse_int_list(const Json& a) {
  std::vector<Integer> out;
  for (const auto& x : a) out.emplace_back(x.get<std::string>());
  return out;
}

Integer parse_int(const Json& j) { return Integer(j.get<std::string>()); }
long parse_long(const Json& j) { return std::stol(j.get<std::string>()); }

// d^k in [lo_x/hi_y, hi_x/lo_y]
bool power_inside(const Rational& dk, const Rational& lo_x, const Rational& hi_x, const Rational& lo_y,
                  const Rational& hi_y) {
  return lo_x <= dk * hi_y && dk * lo_y <= hi_x;
}

bool exclusion_holds(int d, long K, const Rational& lo_x, const Rational& hi_x, const Rational& lo_y,
                     const Rational& hi_y) {
  Rational dd(d);
  for (long k = -K; k <= K; ++k)
    if (power_inside(pow(dd, k), lo_x, hi_x, lo_y, hi_y)) return false;
  Rational end = pow(dd, K + 1);
  return end * lo_y > hi_x && hi_y < end * lo_x;
}

VerifyOutcome verify_height_ratio(const Json& pl) {
  int d = static_cast<int>(parse_long(pl.at("d")));
  long K = parse_long(pl.at("K"));
  Rational lo_x = parse_rational(pl.at("x").at("lo")), hi_x = parse_rational(pl.at("x").at("hi"));
  Rational lo_y = parse_rational(pl.at("y").at("lo")), hi_y = parse_rational(pl.at("y").at("hi"));
  if (d < 2) return VerifyOutcome::fail("height-ratio: degree below 2");
  if (lo_x <= 0 || lo_y <= 0 || lo_x > hi_x || lo_y > hi_y)
    return VerifyOutcome::fail("height-ratio: enclosures not positive and ordered");
  if (K != ratio_exponent_bound(hi_x, lo_y, d))
    return VerifyOutcome::fail("height-ratio: recorded K differs from the bound");
  if (!exclusion_holds(d, K, lo_x, hi_x, lo_y, hi_y))
    return VerifyOutcome::fail("height-ratio: a power of d is not excluded");
  return {};
}

VerifyOutcome verify_prime_degree(const Json& pl) {
  Integer p = parse_int(pl.at("p"));
  long d = parse_long(pl.at("d"));
  auto xm = parse_int_list(pl.at("x_minpoly"));
  Integer q = parse_int(pl.at("eisenstein"));
  long deg_x = parse_long(pl.at("x_degree"));
  if (!is_prime(p)) return VerifyOutcome::fail("prime-degree: p is not prime");
  if (p <= d) return VerifyOutcome::fail("prime-degree: p does not exceed d");
  if (static_cast<long>(xm.size()) - 1 != deg_x) return VerifyOutcome::fail("prime-degree: degree of x mismatch");
  if (Integer(deg_x) % p != 0) return VerifyOutcome::fail("prime-degree: p does not divide deg x");
  if (!is_eisenstein(xm, q)) return VerifyOutcome::fail("prime-degree: minimal polynomial of x is not Eisenstein");
  const Json& t = pl.at("target");
  auto tm = parse_int_list(t.at("minpoly"));
  std::vector<long> degs;
  for (const auto& v : t.at("degrees")) degs.push_back(parse_long(v));
  if (degs.empty() || degs[0] != static_cast<long>(tm.size()) - 1)
    return VerifyOutcome::fail("prime-degree: degree of target mismatch");
  if (tm.size() > 2) {
    if (!t.contains("eisenstein")) {
      auto fac = upoly::factor(upoly::from_integers(tm));
      if (fac.size() != 1 || fac[0].second != 1) return VerifyOutcome::fail("prime-degree: target not irreducible");
    } else if (!is_eisenstein(tm, parse_int(t.at("eisenstein")))) {
      return VerifyOutcome::fail("prime-degree: target witness fails");
    }
  }
  for (std::size_t m = 0; m < degs.size(); ++m) {
    if (degs[m] < 1) return VerifyOutcome::fail("prime-degree: nonpositive degree");
    if (m > 0 && degs[m - 1] % degs[m] != 0) return VerifyOutcome::fail("prime-degree: degrees do not divide");
    if (Integer(degs[m]) % p == 0) return VerifyOutcome::fail("prime-degree: p divides a target degree");
  }
  return {};
}

VerifyOutcome verify_padic(const Json& pl) {
  Integer p = parse_int(pl.at("p"));
  if (!is_prime(p)) return VerifyOutcome::fail("padic: p is not prime");
  std::string kind = pl.at("kind");
  if (kind == "level") {
    auto mp = parse_int_list(pl.at("delta_minpoly"));
    if (!quadratic_powers_irrational(mp)) return VerifyOutcome::fail("padic: delta^n may be rational for n != 0");
    long a = parse_long(pl.at("level_x")), b = parse_long(pl.at("level_y"));
    if (a <= 0 || b <= 0) return VerifyOutcome::fail("padic: levels must be positive");
    if (a == b) return VerifyOutcome::fail("padic: equal levels");
    return {};
  }
  if (kind == "invariant") {
    if (parse_long(pl.at("value_x")) == parse_long(pl.at("value_y")))
      return VerifyOutcome::fail("padic: invariant values agree");
    return {};
  }
  if (kind == "ratio-valuation") {
    // v_p((l_x/l_y)^e) != 0 = v_p(delta^n) for every n.
    Rational delta = parse_rational(pl.at("delta"));
    long e = parse_long(pl.at("exponent"));
    Integer lx = parse_int(pl.at("l_x")), ly = parse_int(pl.at("l_y"));
    if (delta <= 0 || lx <= 0 || ly <= 0 || e < 1) return VerifyOutcome::fail("padic: nonpositive ratio data");
    if (valuation(delta, p).value() != 0) return VerifyOutcome::fail("padic: p divides delta");
    Rational r(lx, ly);
    r.canonicalize();
    if (valuation(r, p).value() * e == 0) return VerifyOutcome::fail("padic: ratio is a p-adic unit");
    return {};
  }
  return VerifyOutcome::fail("padic: unknown kind '" + kind + "'");
}

// Orbits of x and y under f are disjoint when, for m = the iterate used,
// every pair f^a x, f^b y (a, b < m) has disjoint f^m-orbits.
VerifyOutcome verify_iterate_reduction(Scheme s, const Json& pl) {
  long m = parse_long(pl.at("m"));
  const Json& subs = pl.at("pairs");
  if (m < 1 || subs.size() != static_cast<std::size_t>(m * m))
    return VerifyOutcome::fail("iterate reduction: expected m^2 sub-certificates");
  std::vector<char> seen(static_cast<std::size_t>(m * m), 0);
  for (const auto& sub : subs) {
    long a = parse_long(sub.at("a")), b = parse_long(sub.at("b"));
    if (a < 0 || b < 0 || a >= m || b >= m) return VerifyOutcome::fail("iterate reduction: index out of range");
    seen[static_cast<std::size_t>(a * m + b)] = 1;
    auto r = verify_disjointness({s, sub.at("payload")});
    if (!r) return VerifyOutcome::fail("iterate reduction (" + std::to_string(a) + "," + std::to_string(b) + "): " + r.reason);
  }
  if (std::count(seen.begin(), seen.end(), 0)) return VerifyOutcome::fail("iterate reduction: missing pair");
  return {};
}

std::vector<Rational> to_rationals(const std::vector<Integer>& v) { return {v.begin(), v.end()}; }

bool avoids(const std::vector<MultiPoly>& avoid, const std::vector<Rational>& x) {
  for (const auto& g : avoid)
    if (g.evaluate(x) == 0) return false;
  return true;
}

Json enclosure_json(const Interval& v) { return Json{{"lo", exact_string(v.lo())}, {"hi", exact_string(v.hi())}}; }

}  // namespace

std::string exact_string(double x) { return exact_value(x).get_str(); }

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::HeightRatio: return "height-ratio";
    case Scheme::PrimeDegree: return "prime-degree";
    case Scheme::PadicInvariant: return "padic-invariant";
  }
  return "";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "height-ratio") return Scheme::HeightRatio;
  if (name == "prime-degree") return Scheme::PrimeDegree;
  if (name == "padic-invariant") return Scheme::PadicInvariant;
  throw InvalidArgument("unknown certificate scheme '" + name + "'");
}

VerifyOutcome verify_disjointness(const DisjointnessCertificate& cert) {
  try {
    if (cert.payload.contains("reduction")) return verify_iterate_reduction(cert.scheme, cert.payload);
    switch (cert.scheme) {
      case Scheme::HeightRatio: return verify_height_ratio(cert.payload);
      case Scheme::PrimeDegree: return verify_prime_degree(cert.payload);
      case Scheme::PadicInvariant: return verify_padic(cert.payload);
    }
  } catch (const Json::exception& e) {
    return VerifyOutcome::fail(std::string("malformed payload: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return VerifyOutcome::fail(std::string("malformed number: ") + e.what());
  } catch (const Error& e) {
    return VerifyOutcome::fail(e.what());
  }
  return VerifyOutcome::fail("unknown scheme");
}

// ---- height ratio ----

long ratio_exponent_bound(const Rational& hi_x, const Rational& lo_y, int d) {
  Rational r = hi_x / lo_y;
  double t = std::abs(std::log(r.get_d())) / std::log(static_cast<double>(d));
  return static_cast<long>(std::ceil(t)) + 1;
}

std::optional<DisjointnessCertificate> ratio_not_power(const CanonicalHeightValue& hx, const CanonicalHeightValue& hy,
                                                       int d) {
  if (d < 2) throw InvalidArgument("ratio_not_power: degree must be at least 2");
  if (!(hx.value.lo() > 0) || !(hy.value.lo() > 0))
    throw InvalidArgument("ratio_not_power: enclosures must be strictly positive");
  if (!hx.value.is_finite() || !hy.value.is_finite()) return std::nullopt;
  Rational lo_x = exact_value(hx.value.lo()), hi_x = exact_value(hx.value.hi());
  Rational lo_y = exact_value(hy.value.lo()), hi_y = exact_value(hy.value.hi());
  long K = ratio_exponent_bound(hi_x, lo_y, d);
  if (!exclusion_holds(d, K, lo_x, hi_x, lo_y, hi_y)) return std::nullopt;
  DisjointnessCertificate c;
  c.scheme = Scheme::HeightRatio;
  c.payload = Json{{"d", std::to_string(d)},
                   {"K", std::to_string(K)},
                   {"x", enclosure_json(hx.value)},
                   {"y", enclosure_json(hy.value)}};
  return c;
}

// ---- valuation lemma ----

LemNumResult lem_num_solver(const Rational& delta, bool squares, const std::vector<Integer>& l_list) {
  if (delta <= 0) throw InvalidArgument("lem_num_solver: delta must be positive");
  if (l_list.empty()) throw InvalidArgument("lem_num_solver: empty list");
  for (const auto& l : l_list)
    if (l <= 0) throw InvalidArgument("lem_num_solver: entries must be positive");
  long e = squares ? 2 : 1;
  for (Integer p = 2;; p = next_prime(p)) {
    auto divides = [&](const Integer& n) { return n % p == 0; };
    if (divides(delta.get_num()) || divides(delta.get_den())) continue;
    if (std::any_of(l_list.begin(), l_list.end(), divides)) continue;
    LemNumResult r;
    r.l = p;
    for (const auto& l : l_list) r.table.push_back({l, -e});
    return r;
  }
}

VerifyOutcome verify_lem_num(const LemNumResult& r, const Rational& delta, bool squares,
                             const std::vector<Integer>& l_list) {
  if (!is_prime(r.l)) return VerifyOutcome::fail("l is not prime");
  if (valuation(delta, r.l).value() != 0) return VerifyOutcome::fail("v_l(delta) != 0");
  if (r.table.size() != l_list.size()) return VerifyOutcome::fail("valuation table has the wrong length");
  long e = squares ? 2 : 1;
  for (std::size_t i = 0; i < l_list.size(); ++i) {
    if (r.table[i].l_i != l_list[i]) return VerifyOutcome::fail("valuation table out of order");
    Rational ratio(l_list[i], r.l);
    ratio.canonicalize();
    long v = valuation(ratio, r.l).value() * e;
    if (v != r.table[i].valuation || v == 0) return VerifyOutcome::fail("valuation entry wrong");
  }
  return {};
}

// ---- prime degree ----

bool is_eisenstein(const std::vector<Integer>& poly, const Integer& q) {
  if (poly.size() < 2 || !is_prime(q)) return false;
  if (poly.back() % q == 0) return false;
  for (std::size_t i = 0; i + 1 < poly.size(); ++i)
    if (poly[i] % q != 0) return false;
  return poly[0] % (q * q) != 0;
}

PrimeDegreeSample prime_degree_sampler(long A, double B) {
  if (A < 1) throw InvalidArgument("prime_degree_sampler: A must be at least 1");
  if (!(B >= 0)) throw InvalidArgument("prime_degree_sampler: B must be nonnegative");
  Integer p = next_prime(Integer(A));
  Interval target = from_integer(p) * Interval(B);
  Integer q = 2;
  for (;; q = next_prime(q)) {
    Interval lq = log_of(Rational(q), 1e-300);
    if (lq.lo() > target.hi()) break;
    if (lq.hi() <= target.lo()) continue;
    throw PrecisionExhausted("prime_degree_sampler: cannot decide log q > p B");
  }
  unsigned long pp = p.get_ui();
  UPoly m(pp + 1, Rational(0));
  m[0] = -Rational(q);
  m[pp] = 1;
  double root = std::pow(q.get_d(), 1.0 / static_cast<double>(pp));
  return {AlgebraicNumber(m, {root, 0.0}), p, q};
}

std::optional<std::vector<Integer>> pushforward_minpoly(const SelfMap& f, const std::vector<Integer>& minpoly) {
  if (!f.is_projective() || f.dim() != 1) throw InvalidArgument("pushforward: map must be a self-map of P^1");
  if (minpoly.size() < 2) throw InvalidArgument("pushforward: constant minimal polynomial");
  std::vector<std::string> vars{"t", "z"};
  MultiPoly t = MultiPoly::variable(vars, 0), z = MultiPoly::variable(vars, 1);
  std::vector<MultiPoly> chart{t, MultiPoly::constant(vars, 1)};
  MultiPoly p = f.components()[0].substitute(chart);
  MultiPoly q = f.components()[1].substitute(chart);
  MultiPoly m(vars);
  for (std::size_t i = 0; i < minpoly.size(); ++i) {
    Monomial mon;
    mon.set(0, static_cast<unsigned>(i));
    m.add_term(mon, Rational(minpoly[i]));
  }
  MultiPoly g = q * z - p;
  MultiPoly res = resultant_in(m, g, 0);
  if (res.degree() < 1) return std::nullopt;
  UPoly r = univariate_coefficients(res, 0);
  return upoly::primitive(upoly::squarefree_part(r));
}

std::vector<long> iterate_degrees(const SelfMap& f, const std::vector<Integer>& minpoly, std::size_t count) {
  std::vector<long> out;
  std::optional<std::vector<Integer>> cur = minpoly;
  for (std::size_t m = 0; m < count; ++m) {
    if (!cur) {
      out.push_back(1);
      continue;
    }
    out.push_back(static_cast<long>(cur->size()) - 1);
    if (m + 1 < count) cur = pushforward_minpoly(f, *cur);
  }
  return out;
}

DisjointnessCertificate prime_degree_disjointness(const SelfMap& f, const PrimeDegreeSample& x,
                                                  const DegreeTarget& target) {
  if (!f.is_projective() || f.dim() != 1)
    throw InvalidArgument("prime_degree_disjointness: only self-maps of P^1 are supported");
  long d = f.degree();
  const Integer& p = x.p;
  if (!is_prime(p) || x.value.degree() != p) throw InvalidArgument("prime_degree_disjointness: deg x is not p");
  if (p <= d) throw InvalidArgument("prime_degree_disjointness: p must exceed the degree of f");
  if (target.degrees.empty()) throw InvalidArgument("prime_degree_disjointness: no target degrees");
  for (long t : target.degrees)
    if (Integer(t) % p == 0) throw InvalidArgument("prime_degree_disjointness: p divides a target degree");
  DisjointnessCertificate c;
  c.scheme = Scheme::PrimeDegree;
  Json degs = Json::array();
  for (long t : target.degrees) degs.push_back(std::to_string(t));
  Json tj{{"minpoly", int_list(target.minpoly)}, {"degrees", degs}};
  if (target.eisenstein) tj["eisenstein"] = target.eisenstein->get_str();
  c.payload = Json{{"p", p.get_str()},
                   {"d", std::to_string(d)},
                   {"x_minpoly", int_list(x.value.minpoly())},
                   {"x_degree", std::to_string(x.value.degree())},
                   {"eisenstein", x.q.get_str()},
                   {"target", tj}};
  return c;
}

VerifyOutcome verify_prime_degree_against(const SelfMap& f, const DisjointnessCertificate& cert) {
  if (auto r = verify_disjointness(cert); !r) return r;
  try {
    const Json& pl = cert.payload;
    if (parse_long(pl.at("d")) != f.degree()) return VerifyOutcome::fail("prime-degree: d is not the map degree");
    auto tm = parse_int_list(pl.at("target").at("minpoly"));
    std::vector<long> rec;
    for (const auto& v : pl.at("target").at("degrees")) rec.push_back(parse_long(v));
    if (iterate_degrees(f, tm, rec.size()) != rec)
      return VerifyOutcome::fail("prime-degree: recorded orbit degrees differ from the pushforward");
  } catch (const std::exception& e) {
    return VerifyOutcome::fail(std::string("prime-degree: ") + e.what());
  }
  return {};
}

// ---- p-adic ----

BoxSample padic_box_sampler(const Integer& p, const std::vector<long>& a, const std::vector<MultiPoly>& avoid,
                            std::size_t fuel) {
  if (!is_prime(p)) throw InvalidArgument("padic_box_sampler: p must be prime");
  if (a.empty()) throw InvalidArgument("padic_box_sampler: empty exponent tuple");
  for (const auto& g : avoid) {
    if (g.is_zero()) throw InvalidArgument("padic_box_sampler: avoid polynomial is zero");
    if (g.nvars() != a.size()) throw InvalidArgument("padic_box_sampler: avoid polynomial has the wrong arity");
  }
  std::size_t n = a.size();
  std::vector<Integer> units;
  auto unit = [&](std::size_t k) -> const Integer& {
    Integer c = units.empty() ? Integer(0) : units.back();
    while (units.size() <= k) {
      ++c;
      if (c % p != 0) units.push_back(c);
    }
    return units[k];
  };
  std::vector<Rational> scale;
  for (long e : a) scale.push_back(pow(Rational(p), e));
  BoxSample out;
  std::vector<std::size_t> idx(n);
  for (std::size_t top = 0;; ++top) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      if (*std::max_element(idx.begin(), idx.end()) == top) {
        if (++out.examined > fuel) throw ResourceLimit("padic_box_sampler: fuel exhausted");
        std::vector<Rational> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = scale[i] * unit(idx[i]);
        if (avoids(avoid, x)) {
          out.point = AffPoint(std::move(x));
          return out;
        }
      }
      std::size_t i = n;
      while (i > 0 && idx[i - 1] == top) idx[--i] = 0;
      if (i == 0) break;
      ++idx[i - 1];
    }
  }
}

bool quadratic_powers_irrational(const std::vector<Integer>& minpoly) {
  if (minpoly.size() != 3 || minpoly[2] != 1) return false;
  const Integer& b = minpoly[1];
  const Integer& c = minpoly[0];
  if (b == 0) return false;
  Integer disc = b * b - 4 * c;
  return disc > 0 && !mpz_perfect_square_p(disc.get_mpz_t());
}

DisjointnessCertificate padic_level_certificate(const Integer& p, const std::vector<Integer>& delta_minpoly,
                                                long level_x, long level_y) {
  DisjointnessCertificate c;
  c.scheme = Scheme::PadicInvariant;
  c.payload = Json{{"p", p.get_str()},
                   {"kind", "level"},
                   {"delta_minpoly", int_list(delta_minpoly)},
                   {"level_x", std::to_string(level_x)},
                   {"level_y", std::to_string(level_y)}};
  return c;
}

DisjointnessCertificate padic_invariant_certificate(const Integer& p, const std::string& invariant, long value_x,
                                                    long value_y) {
  DisjointnessCertificate c;
  c.scheme = Scheme::PadicInvariant;
  c.payload = Json{{"p", p.get_str()},
                   {"kind", "invariant"},
                   {"invariant", invariant},
                   {"value_x", std::to_string(value_x)},
                   {"value_y", std::to_string(value_y)}};
  return c;
}

// ---- gap window ----

ProjPoint LineParam::operator()(const ProjPoint& a) const {
  auto v = to_rationals(a.coords());
  std::vector<Rational> out;
  for (const auto& f : forms) out.push_back(f.evaluate(v));
  return ProjPoint::from_rationals(out);
}

LineParam identity_line(const std::vector<std::string>& vars) {
  if (vars.size() != 2) throw InvalidArgument("identity_line: expected two variables");
  return {{MultiPoly::variable(vars, 0), MultiPoly::variable(vars, 1)}};
}

Interval line_distortion(const LineParam& line) {
  if (line.forms.size() < 2) throw InvalidArgument("line: need at least two forms");
  for (const auto& f : line.forms)
    if (f.nvars() != 2 || (!f.is_zero() && (f.degree() != 1 || !f.is_homogeneous())))
      throw InvalidArgument("line: forms must be linear in two variables");
  auto forms = primitive_components(line.forms);
  std::vector<std::array<Integer, 2>> rows;
  Integer rowsum = 0;
  for (const auto& f : forms) {
    Monomial s{1, 0}, t{0, 1};
    std::array<Integer, 2> r{f.coefficient(s).get_num(), f.coefficient(t).get_num()};
    rowsum = std::max(rowsum, Integer(abs(r[0]) + abs(r[1])));
    rows.push_back(r);
  }
  std::optional<Rational> best;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      Integer det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
      if (det == 0) continue;
      // adj = [[m11, -m01], [-m10, m00]]; row sums
      Integer adj = std::max(Integer(abs(rows[j][1]) + abs(rows[i][1])), Integer(abs(rows[j][0]) + abs(rows[i][0])));
      Rational v(adj);
      if (!best || v < *best) best = v;
    }
  if (!best) throw InvalidArgument("line: linear forms do not define an embedding of P^1");
  return max(Interval(0.0), max(log_of(rowsum), log_of(*best)));
}

GapSearchResult gap_window_search(const MorphismCertificate& cert, const LineParam& line,
                                  const std::vector<Seed>& seeds, const std::vector<MultiPoly>& avoid,
                                  const GapSearchOptions& options) {
  int d = cert.degree();
  if (d < 2) throw InvalidArgument("gap_window_search: degree must be at least 2");
  if (line.forms.size() != cert.integral_components().size())
    throw InvalidArgument("gap_window_search: line does not land in the ambient space");
  for (const auto& s : seeds)
    if (!(s.height.value.lo() > 0)) throw InvalidArgument("gap_window_search: seed enclosure must be positive");

  GapStructure gs;
  gs.modulus = log(Interval(static_cast<double>(d)));
  Interval cI = cert.constant() / Interval(static_cast<double>(d - 1)) + line_distortion(line);
  gs.c = cI.hi();
  for (const auto& s : seeds) {
    gs.targets.push_back(log(s.height.value));
    gs.floor = std::max(gs.floor, gs.targets.back().hi());
  }
  // V = {0} and d^m [lo, hi] up to the cap, merged.
  double cap = options.height_cap + gs.c;
  std::vector<std::pair<double, double>> v{{0.0, 0.0}};
  for (const auto& s : seeds) {
    Interval cur = s.height.value;
    while (cur.lo() <= cap) {
      v.emplace_back(cur.lo(), cur.hi());
      cur *= Interval(static_cast<double>(d));
    }
  }
  std::sort(v.begin(), v.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : v) {
    if (!merged.empty() && iv.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  for (std::size_t i = 0; i < merged.size(); ++i) {
    double lo = merged[i].second;
    double hi = i + 1 < merged.size() ? merged[i + 1].first : cap;
    if (hi > lo) gs.gaps.emplace_back(lo, hi);
  }

  std::vector<Rational> coords;
  std::size_t examined = 0;
  for (const auto& [glo, ghi] : gs.gaps) {
    double wlo = round_up(glo + gs.c), whi = round_down(std::min(ghi - gs.c, options.height_cap));
    if (!(whi > wlo)) continue;
    HeightWindow window(1, wlo, whi);
    while (auto a = window.next()) {
      if (++examined > options.fuel) throw GapExhausted("gap_window_search: fuel exhausted", static_cast<long>(examined));
      Interval ha = weil_height(*a);
      if (!(ha.lo() > wlo && ha.hi() < whi)) continue;
      ProjPoint x = line(*a);
      if (!avoids(avoid, to_rationals(x.coords()))) continue;
      auto pos = positive_canonical_height(cert, x);
      if (!pos) continue;
      CanonicalHeightValue hx = canonical_height(cert, x, options.width);
      if (!(hx.value.lo() > 0)) continue;
      std::vector<DisjointnessCertificate> certs;
      bool ok = true;
      for (const auto& s : seeds) {
        auto c = ratio_not_power(hx, s.height, d);
        if (!c) {
          ok = false;
          break;
        }
        certs.push_back(std::move(*c));
      }
      if (!ok) continue;
      return {*a, x, hx, *pos, std::move(certs), {wlo, whi}, gs};
    }
  }
  throw GapExhausted("gap_window_search: no gap of positive length produced a point below the cap",
                     static_cast<long>(examined));
}

// ---- families ----

std::optional<ProjPoint> IntegralPointStream::next() {
  if (n_ == 0) throw InvalidArgument("integral point stream: dimension must be positive");
  while (true) {
    if (cur_.empty()) {
      cur_.assign(n_, 0);
    } else {
      std::size_t i = n_;
      while (i > 0 && cur_[i - 1] == bound_) cur_[--i] = 0;
      if (i == 0) {
        ++bound_;
        cur_.assign(n_, 0);
      } else {
        ++cur_[i - 1];
      }
    }
    if (*std::max_element(cur_.begin(), cur_.end()) != bound_) continue;
    std::vector<Integer> c(cur_.begin(), cur_.end());
    c.emplace_back(1);
    return ProjPoint(std::move(c));
  }
}

FamilyResult height_ratio_family(const MorphismCertificate& cert, std::size_t k, const std::vector<MultiPoly>& avoid,
                                 const HeightRatioOptions& options, const std::vector<ProjPoint>& seed,
                                 FamilyResult base) {
  std::size_t n = cert.integral_components().size() - 1;
  int d = cert.degree();
  IntegralPointStream stream(n);
  std::map<ProjPoint, CanonicalHeightValue> cache;
  auto height = [&](const ProjPoint& x) -> const CanonicalHeightValue& {
    auto it = cache.find(x);
    if (it == cache.end()) it = cache.emplace(x, canonical_height(cert, x, options.width)).first;
    return it->second;
  };
  FamilyContext<ProjPoint> ctx;
  ctx.fuel = options.fuel;
  ctx.next = [&] { return stream.next(); };
  ctx.admissible = [&](const ProjPoint& x) { return avoids(avoid, to_rationals(x.coords())); };
  ctx.maximality = [&](const ProjPoint& x) -> std::optional<Json> {
    auto pos = positive_canonical_height(cert, x);
    if (!pos) return std::nullopt;
    const auto& h = height(x);
    return Json{{"depth", std::to_string(pos->depth)},
                {"iterate", int_list(pos->iterate.coords())},
                {"height", Json{{"depth", std::to_string(h.depth)},
                                {"lo", exact_string(h.value.lo())},
                                {"hi", exact_string(h.value.hi())}}}};
  };
  ctx.disjoint = [&](const ProjPoint& x, const ProjPoint& y) -> std::optional<DisjointnessCertificate> {
    const auto& hx = height(x);
    const auto& hy = height(y);
    if (!(hx.value.lo() > 0) || !(hy.value.lo() > 0)) return std::nullopt;
    auto c = ratio_not_power(hx, hy, d);
    if (!c) return std::nullopt;
    c->payload["x"]["point"] = int_list(x.coords());
    c->payload["x"]["depth"] = std::to_string(hx.depth);
    c->payload["y"]["point"] = int_list(y.coords());
    c->payload["y"]["depth"] = std::to_string(hy.depth);
    return c;
  };
  ctx.to_json = [](const ProjPoint& x) { return int_list(x.coords()); };
  std::size_t from = base.points.size();
  for (const auto& g : avoid) base.avoided.push_back({g.to_string(), from});
  return family_builder(Scheme::HeightRatio, k, ctx, seed, std::move(base));
}

FamilyResult prime_degree_family(const MorphismCertificate& cert, std::size_t k, double B, std::size_t orbit_degrees) {
  const SelfMap& f = cert.map();
  if (f.dim() != 1) throw InvalidArgument("prime-degree family: only P^1 is supported");
  int d = f.degree();
  if (d < 2) throw InvalidArgument("prime-degree family: degree must be at least 2");
  double bound = (cert.c_minus() / Interval(static_cast<double>(d - 1))).hi();
  double b = std::max(B, bound);
  long A = d;
  std::vector<PrimeDegreeSample> chosen;
  FamilyResult out;
  out.scheme = Scheme::PrimeDegree;
  auto target_of = [&](const PrimeDegreeSample& s) {
    DegreeTarget t;
    t.minpoly = s.value.minpoly();
    t.eisenstein = s.q;
    t.degrees = iterate_degrees(f, t.minpoly, orbit_degrees);
    return t;
  };
  while (chosen.size() < k) {
    auto s = prime_degree_sampler(A, b);
    ++out.examined;
    A = s.p.get_si();
    Interval h = algebraic_height(s.value);
    if (!(h.lo() > bound)) continue;
    std::vector<PairCertificate> pairs;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      pairs.push_back({i, chosen.size(), prime_degree_disjointness(f, chosen[i], target_of(s))});
      pairs.push_back({chosen.size(), i, prime_degree_disjointness(f, s, target_of(chosen[i]))});
    }
    Json pj{{"minpoly", int_list(s.value.minpoly())},
            {"degree", std::to_string(s.value.degree())},
            {"eisenstein", s.q.get_str()},
            {"root", {{"re", exact_string(s.value.disc().re)}, {"im", exact_string(s.value.disc().im)}}}};
    out.points.push_back(pj);
    out.maximality.push_back(Json{{"height", enclosure_json(h)}, {"bound", exact_string(bound)}});
    for (auto& p : pairs) out.pairs.push_back(std::move(p));
    chosen.push_back(std::move(s));
  }
  out.complete = true;
  return out;
}

}  // namespace arithdyn
