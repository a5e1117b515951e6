#include "arithdyn/serialize.hpp"

#include <map>
#include <set>

#include "arithdyn/algebraic.hpp"
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

std::string str(const Json& j) { return j.get<std::string>(); }

// Thrown inside the verifier; turned into a failed outcome at the top.
struct Reject {
  std::string why;
};

void require(bool ok, const std::string& why) {
  if (!ok) throw Reject{why};
}

std::string at(std::size_t i) { return "point " + std::to_string(i) + ": "; }

std::string pair_tag(std::size_t i, std::size_t j) {
  return "pair (" + std::to_string(i) + "," + std::to_string(j) + "): ";
}

void check_payload(const PairCertificate& pc) {
  auto r = verify_disjointness(pc.certificate);
  require(r.ok, pair_tag(pc.i, pc.j) + r.reason);
}

// Unordered coverage for symmetric schemes, ordered for prime-degree.
void check_coverage(const FamilyResult& fam, bool ordered) {
  std::size_t n = fam.points.size();
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& pc : fam.pairs) {
    require(pc.i < n && pc.j < n && pc.i != pc.j, pair_tag(pc.i, pc.j) + "index out of range");
    require(ordered || pc.i < pc.j, pair_tag(pc.i, pc.j) + "expected i < j");
    require(seen.insert({pc.i, pc.j}).second, pair_tag(pc.i, pc.j) + "duplicate certificate");
  }
  std::size_t want = ordered ? n * (n - 1) : n * (n - 1) / 2;
  require(seen.size() == want, "expected " + std::to_string(want) + " pair certificates, found " +
                                   std::to_string(seen.size()));
  require(fam.maximality.size() == n, "one maximality certificate per point is required");
}

void check_avoid(const FamilyResult& fam, const std::vector<std::string>& vars,
                 const std::vector<std::vector<Rational>>& coords) {
  for (const auto& rec : fam.avoided) {
    MultiPoly g = parse_polynomial(rec.poly, vars);
    for (std::size_t i = rec.from; i < coords.size(); ++i)
      require(g.evaluate(coords[i]) != 0, at(i) + "lies on avoided " + rec.poly);
  }
}

std::vector<Rational> to_rationals(const std::vector<Integer>& v) { return {v.begin(), v.end()}; }

ProjPoint canonical_point(const Json& j, const std::string& where) {
  auto c = parse_int_list(j);
  ProjPoint p(c);
  require(p.coords() == c, where + "coordinates are not normalized");
  return p;
}

void check_positivity(const MorphismCertificate& cert, const ProjPoint& x, const Json& m, const std::string& where) {
  long depth = parse_long(m.at("depth"));
  require(depth >= 0 && depth <= 64, where + "depth out of range");
  ProjPoint cur = x;
  for (long n = 0; n < depth; ++n) {
    auto next = cert.map().evaluate(cur);
    require(next.has_value(), where + "orbit meets the indeterminacy locus");
    cur = *next;
  }
  require(cur.coords() == parse_int_list(m.at("iterate")), where + "recorded iterate differs");
  int d = cert.degree();
  Interval margin = weil_height(cur) * Interval(static_cast<double>(d - 1)) - cert.c_minus();
  require(margin.lo() > 0, where + "positivity margin is not positive");
}

MorphismCertificate rebuild_certificate(const Json& subject, MapDefinition& def) {
  def = parse_map(str(subject.at("definition")));
  require(def.projective, "subject map must be projective");
  try {
    return MorphismCertificate(def.map, cofactors_from_json(subject.at("cofactors"), def.map.variables()));
  } catch (const InvalidArgument& e) {
    throw Reject{std::string("cofactor identities: ") + e.what()};
  }
}

void verify_height_ratio_doc(const CertificateDocument& doc) {
  const FamilyResult& fam = doc.family;
  MapDefinition def;
  MorphismCertificate cert = rebuild_certificate(doc.subject, def);
  check_coverage(fam, false);
  std::vector<ProjPoint> pts;
  std::vector<std::vector<Rational>> coords;
  for (std::size_t i = 0; i < fam.points.size(); ++i) {
    pts.push_back(canonical_point(fam.points[i], at(i)));
    require(pts.back().size() == def.variables.size(), at(i) + "wrong number of coordinates");
    coords.push_back(to_rationals(pts.back().coords()));
    for (std::size_t j = 0; j < i; ++j) require(!(pts[j] == pts[i]), at(i) + "repeats point " + std::to_string(j));
    check_positivity(cert, pts[i], fam.maximality[i], at(i));
  }
  check_avoid(fam, def.variables, coords);
  // Each point carries one enclosure; every pair must quote it verbatim.
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Json& h = fam.maximality[i].at("height");
    long depth = parse_long(h.at("depth"));
    require(depth >= 0 && depth <= 200, at(i) + "height depth out of range");
    auto v = canonical_height_at_depth(cert, pts[i], static_cast<int>(depth));
    require(str(h.at("lo")) == exact_string(v.value.lo()) && str(h.at("hi")) == exact_string(v.value.hi()),
            at(i) + "enclosure differs from the recomputation");
  }
  for (const auto& pc : fam.pairs) {
    check_payload(pc);
    const Json& pl = pc.certificate.payload;
    std::string tag = pair_tag(pc.i, pc.j);
    require(parse_long(pl.at("d")) == cert.degree(), tag + "d is not the map degree");
    for (const char* side : {"x", "y"}) {
      const Json& s = pl.at(side);
      std::size_t idx = side[0] == 'x' ? pc.i : pc.j;
      require(parse_int_list(s.at("point")) == pts[idx].coords(), tag + side + " is not the recorded point");
      const Json& h = fam.maximality[idx].at("height");
      require(s.at("depth") == h.at("depth") && s.at("lo") == h.at("lo") && s.at("hi") == h.at("hi"),
              tag + side + " enclosure differs from the point's enclosure");
    }
  }
}

void verify_prime_degree_doc(const CertificateDocument& doc) {
  const FamilyResult& fam = doc.family;
  MapDefinition def;
  MorphismCertificate cert = rebuild_certificate(doc.subject, def);
  require(def.dim == 1, "prime-degree families live on P^1");
  check_coverage(fam, true);
  int d = cert.degree();
  std::string bound = exact_string((cert.c_minus() / Interval(static_cast<double>(d - 1))).hi());
  for (std::size_t i = 0; i < fam.points.size(); ++i) {
    const Json& p = fam.points[i];
    auto mp = parse_int_list(p.at("minpoly"));
    long deg = parse_long(p.at("degree"));
    require(static_cast<long>(mp.size()) - 1 == deg, at(i) + "degree does not match the minimal polynomial");
    require(is_eisenstein(mp, parse_int(p.at("eisenstein"))), at(i) + "minimal polynomial is not Eisenstein");
    const Json& m = fam.maximality[i];
    require(str(m.at("bound")) == bound, at(i) + "height bound differs from c_minus/(d-1)");
    std::complex<double> approx(parse_rational(str(p.at("root").at("re"))).get_d(),
                                parse_rational(str(p.at("root").at("im"))).get_d());
    Interval h = algebraic_height(AlgebraicNumber(upoly::from_integers(mp), approx));
    require(str(m.at("height").at("lo")) == exact_string(h.lo()) && str(m.at("height").at("hi")) == exact_string(h.hi()),
            at(i) + "height enclosure differs from the recomputation");
    require(parse_rational(exact_string(h.lo())) > parse_rational(bound),
            at(i) + "height does not exceed the bound");
  }
  for (const auto& pc : fam.pairs) {
    check_payload(pc);
    const Json& pl = pc.certificate.payload;
    std::string tag = pair_tag(pc.i, pc.j);
    require(pl.at("x_minpoly") == fam.points[pc.i].at("minpoly"), tag + "x is not the recorded point");
    require(pl.at("eisenstein") == fam.points[pc.i].at("eisenstein"), tag + "x witness differs");
    require(pl.at("target").at("minpoly") == fam.points[pc.j].at("minpoly"), tag + "target is not the recorded point");
    auto r = verify_prime_degree_against(cert.map(), pc.certificate);
    require(r.ok, tag + r.reason);
  }
}

void verify_normal_form_doc(const CertificateDocument& doc) {
  const FamilyResult& fam = doc.family;
  const Json& s = doc.subject;
  NormalFormQuadratic nf;
  nf.which = parse_normal_form(str(s.at("form")));
  for (const auto& c : s.at("params")) nf.params.push_back(parse_rational(str(c)));
  Integer p = parse_int(s.at("p"));
  require(is_prime(p), "p is not prime");
  nf.map();
  for (const auto& c : nf.params)
    require(c == 0 || valuation(c, p).value() == 0, "parameter " + c.get_str() + " is not a unit");
  check_coverage(fam, false);
  std::vector<std::vector<Rational>> coords;
  std::vector<Integer> levels;
  for (std::size_t i = 0; i < fam.points.size(); ++i) {
    AffPoint P({parse_rational(str(fam.points[i].at("x"))), parse_rational(str(fam.points[i].at("y")))});
    coords.push_back(P.coords());
    auto [A, B] = signature(P, p);
    const Json& m = fam.maximality[i];
    require(parse_long(m.at("A")) == A && parse_long(m.at("B")) == B, at(i) + "recorded valuations differ");
    Integer level = parse_int(fam.points[i].at("level"));
    require(level == A, at(i) + "level is not -v(x)");
    require(str(m.at("region")) == normal_form_region(nf.which), at(i) + "region differs");
    require(parse_int(m.at("p")) == p, at(i) + "wrong prime");
    switch (nf.which) {
      case NormalFormQuadratic::Which::N11: require(A == B && A > 0, at(i) + "not in |x| = |y| > 1"); break;
      case NormalFormQuadratic::Which::N32: require(0 < A && A < B, at(i) + "not in 1 < |x| < |y|"); break;
      case NormalFormQuadratic::Which::N31: require(A > 0 && A > B, at(i) + "not in |x| > 1, |x| > |y|"); break;
    }
    levels.push_back(level);
  }
  check_avoid(fam, {"x", "y"}, coords);
  for (const auto& pc : fam.pairs) {
    check_payload(pc);
    const Json& pl = pc.certificate.payload;
    std::string tag = pair_tag(pc.i, pc.j);
    if (nf.which != NormalFormQuadratic::Which::N31) {
      require(str(pl.at("kind")) == "level", tag + "expected a level certificate");
      require(parse_int(pl.at("p")) == p, tag + "wrong prime");
      require(parse_int_list(pl.at("delta_minpoly")) == std::vector<Integer>{-1, -1, 1},
              tag + "delta is not the golden ratio");
      require(parse_int(pl.at("level_x")) == levels[pc.i] && parse_int(pl.at("level_y")) == levels[pc.j],
              tag + "levels differ from the points");
      continue;
    }
    require(str(pl.at("reduction")) == "iterate" && parse_long(pl.at("m")) == 2, tag + "expected the f^2 reduction");
    for (const auto& sub : pl.at("pairs")) {
      long a = parse_long(sub.at("a")), b = parse_long(sub.at("b"));
      const Json& q = sub.at("payload");
      if (a != b) {
        require(str(q.at("kind")) == "invariant" && parse_int(q.at("p")) == p && parse_long(q.at("value_x")) == a &&
                    parse_long(q.at("value_y")) == b,
                tag + "box invariant mismatch");
      } else {
        require(str(q.at("kind")) == "ratio-valuation" && parse_rational(str(q.at("delta"))) == 2 &&
                    parse_long(q.at("exponent")) == 1,
                tag + "expected a ratio-valuation certificate for f^2");
        require(parse_int(q.at("l_x")) == (levels[pc.i] << a) && parse_int(q.at("l_y")) == (levels[pc.j] << b),
                tag + "ratio does not match the levels");
      }
    }
  }
}

void verify_case3_doc(const CertificateDocument& doc) {
  const FamilyResult& fam = doc.family;
  MapDefinition def = parse_map(str(doc.subject.at("definition")));
  require(!def.projective && def.dim == 2, "case3 subject must be a map of A^2");
  Integer p = parse_int(doc.subject.at("p"));
  BoundaryData bd = boundary_analyze(def.map);
  require(bd.kind == BoundaryCase::Case3a || bd.kind == BoundaryCase::Case3b, "map is " + case_name(bd.kind));
  FixedPointAtInfinity q0;
  q0.point = ProjPoint({Integer(1), Integer(0)});
  AttractorBox box = attractor_box_at(bd, q0, p);
  require(!bd.swapped, "case3 subject must not need the coordinate swap");
  check_coverage(fam, false);
  std::vector<std::vector<Rational>> coords;
  std::vector<long> ss;
  for (std::size_t i = 0; i < fam.points.size(); ++i) {
    AffPoint P({parse_rational(str(fam.points[i].at("x"))), parse_rational(str(fam.points[i].at("y")))});
    coords.push_back(P.coords());
    require(box.contains(P), at(i) + "not in U");
    auto [A, B] = signature(P, p);
    require(parse_long(fam.maximality[i].at("A")) == A && parse_long(fam.maximality[i].at("B")) == B,
            at(i) + "recorded valuations differ");
    require(str(fam.maximality[i].at("region")) == box.describe() && parse_int(fam.maximality[i].at("p")) == p,
            at(i) + "region differs");
    long s = parse_long(fam.points[i].at("s"));
    require(s == A - B, at(i) + "s is not v(y) - v(x)");
    ss.push_back(s);
  }
  check_avoid(fam, def.variables, coords);
  for (const auto& pc : fam.pairs) {
    check_payload(pc);
    const Json& pl = pc.certificate.payload;
    std::string tag = pair_tag(pc.i, pc.j);
    require(str(pl.at("kind")) == "invariant" && parse_int(pl.at("p")) == p, tag + "expected an invariant at p");
    require(parse_long(pl.at("value_x")) == ss[pc.i] && parse_long(pl.at("value_y")) == ss[pc.j],
            tag + "invariant values differ from the points");
  }
}

void verify_elliptic_doc(const CertificateDocument& doc) {
  const FamilyResult& fam = doc.family;
  const Json& s = doc.subject;
  CurveDefinition cd = parse_curve(str(s.at("curve")));
  EllipticCurve E(cd.a, cd.b);
  long m = parse_long(s.at("m"));
  require(m <= -2 || m >= 2, "|m| must be at least 2");
  ECPoint a = ec_point_from_json(s.at("translation")), x0 = ec_point_from_json(s.at("x0")),
          b = ec_point_from_json(s.at("b"));
  for (const ECPoint* P : {&a, &x0, &b}) require(E.contains(*P), "subject point " + P->to_string() + " is off the curve");
  require(mul(E, Integer(1 - m), b) == a, "translation is not (1 - m) b");
  const auto& cert = E.duplication_certificate();
  require(!x0.is_infinity() && positive_canonical_height(cert, x_coordinate(x0)).has_value(),
          "x0 has no positivity certificate");
  check_coverage(fam, false);
  std::vector<Integer> ls;
  for (std::size_t i = 0; i < fam.points.size(); ++i) {
    Integer l = parse_int(fam.points[i].at("l"));
    require(l > 0, at(i) + "multiplier must be positive");
    ECPoint z = ec_point_from_json(fam.points[i]);
    require(z == add(E, mul(E, l, x0), b), at(i) + "is not l x0 + b");
    check_positivity(cert, x_coordinate(z), fam.maximality[i], at(i));
    ls.push_back(l);
  }
  Rational delta(Integer(m) * m);
  for (const auto& pc : fam.pairs) {
    check_payload(pc);
    const Json& pl = pc.certificate.payload;
    std::string tag = pair_tag(pc.i, pc.j);
    require(str(pl.at("kind")) == "ratio-valuation", tag + "expected a ratio-valuation certificate");
    require(parse_rational(str(pl.at("delta"))) == delta && parse_long(pl.at("exponent")) == 2,
            tag + "delta must be m^2 with exponent 2");
    require(parse_int(pl.at("l_x")) == ls[pc.i] && parse_int(pl.at("l_y")) == ls[pc.j],
            tag + "multipliers differ from the points");
  }
}

}  // namespace

Json family_to_json(const FamilyResult& f) {
  Json pairs = Json::array();
  for (const auto& pc : f.pairs)
    pairs.push_back(Json{{"i", std::to_string(pc.i)}, {"j", std::to_string(pc.j)}, {"payload", pc.certificate.payload}});
  Json avoid = Json::array();
  for (const auto& a : f.avoided) avoid.push_back(Json{{"poly", a.poly}, {"from", std::to_string(a.from)}});
  return Json{{"scheme", scheme_name(f.scheme)},
              {"points", f.points},
              {"maximality", f.maximality},
              {"pairs", pairs},
              {"avoid", avoid},
              {"complete", f.complete},
              {"examined", std::to_string(f.examined)}};
}

FamilyResult family_from_json(const Json& j) {
  FamilyResult f;
  f.scheme = parse_scheme(str(j.at("scheme")));
  for (const auto& p : j.at("points")) f.points.push_back(p);
  for (const auto& m : j.at("maximality")) f.maximality.push_back(m);
  for (const auto& pc : j.at("pairs"))
    f.pairs.push_back({static_cast<std::size_t>(parse_long(pc.at("i"))), static_cast<std::size_t>(parse_long(pc.at("j"))),
                       DisjointnessCertificate{f.scheme, pc.at("payload")}});
  for (const auto& a : j.at("avoid"))
    f.avoided.push_back({str(a.at("poly")), static_cast<std::size_t>(parse_long(a.at("from")))});
  f.complete = j.at("complete").get<bool>();
  f.examined = static_cast<std::size_t>(parse_long(j.at("examined")));
  return f;
}

Json document_to_json(const CertificateDocument& doc) {
  return Json{{"schema", kCertificateSchema},
              {"subject", doc.subject},
              {"family", family_to_json(doc.family)},
              {"reproduction", doc.reproduction}};
}

CertificateDocument document_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("schema") || j.at("schema") != kCertificateSchema)
    throw InvalidArgument(std::string("not a certificate document (schema ") + kCertificateSchema + " expected)");
  CertificateDocument doc;
  doc.subject = j.at("subject");
  doc.family = family_from_json(j.at("family"));
  doc.reproduction = j.value("reproduction", Json::object());
  return doc;
}

std::string dump_document(const CertificateDocument& doc) { return document_to_json(doc).dump(2) + "\n"; }

CertificateDocument load_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
  try {
    return document_from_json(j);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed certificate document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InvalidArgument(std::string("malformed number: ") + e.what());
  }
}

Json cofactors_to_json(const Cofactors& c) {
  Json g = Json::array();
  for (const auto& row : c.g) {
    Json r = Json::array();
    for (const auto& p : row) r.push_back(p.to_string());
    g.push_back(r);
  }
  return Json{{"exponent", std::to_string(c.exponent)}, {"r", int_list(c.r)}, {"g", g}};
}

Cofactors cofactors_from_json(const Json& j, const std::vector<std::string>& vars) {
  Cofactors c;
  long e = parse_long(j.at("exponent"));
  if (e < 0) throw InvalidArgument("negative cofactor exponent");
  c.exponent = static_cast<unsigned>(e);
  c.r = parse_int_list(j.at("r"));
  for (const auto& row : j.at("g")) {
    std::vector<MultiPoly> r;
    for (const auto& p : row) r.push_back(parse_polynomial(str(p), vars));
    c.g.push_back(std::move(r));
  }
  return c;
}

Json map_subject(const MapDefinition& def, const MorphismCertificate& cert) {
  return Json{{"kind", "map"}, {"definition", print_map(def)}, {"cofactors", cofactors_to_json(cert.cofactors())}};
}

Json normal_form_subject(const NormalFormQuadratic& nf, const Integer& p) {
  Json params = Json::array();
  for (const auto& c : nf.params) params.push_back(c.get_str());
  return Json{{"kind", "normal-form"}, {"form", nf.name()}, {"params", params}, {"p", p.get_str()},
              {"map", nf.map().to_string()}};
}

Json case3_subject(const MapDefinition& def, const Integer& p) {
  return Json{{"kind", "case3"}, {"definition", print_map(def)}, {"p", p.get_str()}};
}

Json elliptic_subject(const CurveDefinition& curve, const ECDynamics& dyn, const ECPoint& x0, const ECPoint& b) {
  return Json{{"kind", "elliptic"},   {"curve", print_curve(curve)}, {"m", std::to_string(dyn.m)},
              {"translation", ec_point_json(dyn.a)}, {"x0", ec_point_json(x0)}, {"b", ec_point_json(b)}};
}

Json ec_point_json(const ECPoint& P) {
  if (P.is_infinity()) return Json{{"infinity", true}};
  return Json{{"x", P.x().get_str()}, {"y", P.y().get_str()}};
}

ECPoint ec_point_from_json(const Json& j) {
  if (j.contains("infinity") && j.at("infinity").get<bool>()) return ECPoint::infinity();
  return {parse_rational(str(j.at("x"))), parse_rational(str(j.at("y")))};
}

VerifyOutcome verify_document(const CertificateDocument& doc) {
  try {
    require(!doc.family.points.empty(), "the family has no points");
    std::string kind = str(doc.subject.at("kind"));
    Scheme s = doc.family.scheme;
    if (kind == "map") {
      if (s == Scheme::HeightRatio) verify_height_ratio_doc(doc);
      else if (s == Scheme::PrimeDegree) verify_prime_degree_doc(doc);
      else throw Reject{"map subjects carry height-ratio or prime-degree families"};
    } else {
      require(s == Scheme::PadicInvariant, kind + " subjects carry padic-invariant families");
      if (kind == "normal-form") verify_normal_form_doc(doc);
      else if (kind == "case3") verify_case3_doc(doc);
      else if (kind == "elliptic") verify_elliptic_doc(doc);
      else throw Reject{"unknown subject kind '" + kind + "'"};
    }
  } catch (const Reject& r) {
    return VerifyOutcome::fail(r.why);
  } catch (const Json::exception& e) {
    return VerifyOutcome::fail(std::string("malformed document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return VerifyOutcome::fail(std::string("malformed number: ") + e.what());
  } catch (const std::out_of_range& e) {
    return VerifyOutcome::fail(std::string("number out of range: ") + e.what());
  } catch (const Error& e) {
    return VerifyOutcome::fail(e.what());
  }
  return {};
}

}  // namespace arithdyn
