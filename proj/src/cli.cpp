#include "arithdyn/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "arithdyn/canonical.hpp"
#include "arithdyn/certify.hpp"
#include "arithdyn/dynamics.hpp"
#include "arithdyn/elliptic.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/parse.hpp"
#include "arithdyn/quad_affine.hpp"
#include "arithdyn/serialize.hpp"

namespace arithdyn::cli {

namespace {

// Result of a subcommand that ran but could not reach a conclusion.
struct Inconclusive {
  std::string why;
};

MapDefinition load_map(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_map(text);
  } catch (const ParseError& e) {
    throw InvalidArgument(path + ":" + e.what());
  }
}

CurveDefinition load_curve(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_curve(text);
  } catch (const ParseError& e) {
    throw InvalidArgument(path + ":" + e.what());
  }
}

std::vector<MultiPoly> load_avoid(const std::string& path, const std::vector<std::string>& vars) {
  if (path.empty()) return {};
  try {
    return parse_polynomial_list(read_file(path), vars);
  } catch (const ParseError& e) {
    throw InvalidArgument(path + ":" + e.what());
  }
}

ProjPoint point_on(const MapDefinition& def, const std::string& text) {
  ProjPoint x = def.projective ? parse_proj_point(text) : parse_aff_point(text).to_projective();
  if (x.size() != def.map.variables().size())
    throw InvalidArgument("point " + text + " does not live on " + def.ambient);
  return x;
}

ECPoint parse_ec_point(const std::string& text) {
  if (text == "O" || text == "o") return ECPoint::infinity();
  AffPoint p = parse_aff_point(text);
  if (p.dim() != 2) throw InvalidArgument("an elliptic curve point has two coordinates");
  return {p[0], p[1]};
}

MorphismCertificate require_morphism(const SelfMap& f) {
  auto res = certify_morphism(f);
  if (auto* n = std::get_if<NotAMorphism>(&res)) throw InvalidArgument("not a morphism: " + n->reason);
  return std::get<MorphismCertificate>(std::move(res));
}

std::string join(const std::vector<long>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ']';
  return os.str();
}

std::string fmt(double x, int prec = 12) {
  std::ostringstream os;
  os << std::setprecision(prec) << x;
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << text;
}

// Writes the document (to --out or stdout) after checking it verifies.
int emit_document(const CertificateDocument& doc, const std::string& out_path, std::ostream& out) {
  auto v = verify_document(doc);
  if (!v.ok) throw Error("internal: emitted document does not verify: " + v.reason);
  std::string text = dump_document(doc);
  const auto& fam = doc.family;
  if (out_path.empty()) {
    out << text;
  } else {
    write_text(out_path, text);
    out << "scheme: " << scheme_name(fam.scheme) << "\n";
    for (std::size_t i = 0; i < fam.points.size(); ++i) out << "point " << i << ": " << fam.points[i].dump() << "\n";
    out << "pair certificates: " << fam.pairs.size() << "\n";
    out << "verified: yes\n";
    out << "wrote " << out_path << "\n";
  }
  if (!fam.complete) throw Inconclusive{"family incomplete: search budget exhausted"};
  return kOk;
}

Json reproduction(const std::string& command, const Json& options) {
  return Json{{"tool", "arithdyn"}, {"version", kToolVersion}, {"command", command}, {"options", options}};
}

Json poly_strings(const std::vector<MultiPoly>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

struct Options {
  std::string map, curve, point, avoid, out, in, extend, scheme = "height-ratio", normal_form, params, b_point;
  long iters = 12, size = 0, prime = 0, dim = 1, bound = 100, depth = -1, mul = 0, quadraticity = 0, m = 2,
       samples = 100, torsion_bound = 16;
  double width = 1e-10, sampler_bound = 0;
  bool dbl = false, height = false, torsion = false, family = false;
};

int cmd_delta(const Options& o, std::ostream& out) {
  MapDefinition def = load_map(o.map);
  if (o.iters < 1) throw InvalidArgument("--iters must be positive");
  auto est = delta_estimate(def.map, static_cast<std::size_t>(o.iters));
  out << "map: " << print_map(def);
  out << "degrees: " << join(est.sequence.degrees()) << "\n";
  out << "delta upper bound: " << fmt(est.upper.hi()) << " (min_k d_k^(1/k), enclosure " << est.upper << ")\n";
  out << "delta heuristic: " << fmt(est.heuristic.mid()) << " (d_n/d_(n-1))\n";
  return kOk;
}

int cmd_stable(const Options& o, std::ostream& out) {
  MapDefinition def = load_map(o.map);
  if (o.iters < 1) throw InvalidArgument("--iters must be positive");
  auto seq = degree_sequence(def.map, static_cast<std::size_t>(o.iters));
  auto rep = stability(seq);
  out << "degrees: " << join(seq.degrees()) << "\n";
  if (rep.stable) out << "stable up to n = " << o.iters << "\n";
  else out << "not algebraically stable: first drop at n = " << *rep.first_drop << "\n";
  return kOk;
}

int cmd_canht(const Options& o, std::ostream& out) {
  MapDefinition def = load_map(o.map);
  if (!def.projective) throw InvalidArgument("canht needs a map of P^N");
  ProjPoint x = point_on(def, o.point);
  MorphismCertificate cert = require_morphism(def.map);
  CanonicalHeightValue v;
  try {
    v = o.depth >= 0 ? canonical_height_at_depth(cert, x, static_cast<int>(o.depth)) : canonical_height(cert, x, o.width);
  } catch (const HeightBudgetExceeded& e) {
    out << "hat h: " << e.partial().value << " at depth " << e.partial().depth << " (width target not reached)\n";
    throw Inconclusive{e.what()};
  }
  out << "point: " << x << "\n";
  out << "h: " << weil_height(x) << "\n";
  out << "hat h: " << v.value << "\n";
  out << "depth: " << v.depth << "  width: " << fmt(v.width(), 3) << "\n";
  out << "c+: " << v.c_plus << "  c-: " << v.c_minus << "\n";
  return kOk;
}

int cmd_alpha(const Options& o, std::ostream& out) {
  MapDefinition def = load_map(o.map);
  ProjPoint x = point_on(def, o.point);
  std::optional<MorphismCertificate> cert;
  if (def.projective) {
    auto res = certify_morphism(def.map);
    if (auto* c = std::get_if<MorphismCertificate>(&res)) cert = std::move(*c);
  }
  if (o.iters < 1) throw InvalidArgument("--iters must be positive");
  ArithDegreeEstimate est;
  try {
    est = alpha_estimate(def.map, x, static_cast<int>(o.iters), cert ? &*cert : nullptr);
  } catch (const TruncatedOrbit& e) {
    out << "orbit reaches the indeterminacy locus after " << e.samples().size() - 1 << " steps\n";
    throw Inconclusive{e.what()};
  }
  for (const auto& [n, h] : est.samples) out << "h(f^" << n << " x) = " << fmt(h.mid()) << "\n";
  out << "alpha lower: " << fmt(est.lower.lo()) << "\n";
  out << "alpha upper: " << fmt(est.upper.hi()) << "\n";
  if (est.exact) out << "alpha = " << *est.exact << " (certified: morphism and hat h > 0)\n";
  return kOk;
}

int cmd_count(const Options& o, std::ostream& out) {
  if (o.dim < 1 || o.bound < 4) throw InvalidArgument("count needs --dim >= 1 and --bound >= 4");
  out << "P^" << o.dim << "(Q), points with H < T\n";
  out << std::setw(10) << "T" << std::setw(16) << "count" << std::setw(20) << "count/T^" << (o.dim + 1) << "\n";
  for (long t : {o.bound / 4, o.bound / 2, o.bound}) {
    auto c = schanuel_ratio(static_cast<std::size_t>(o.dim), Integer(t));
    out << std::setw(10) << t << std::setw(16) << c.count.get_str() << std::setw(21) << fmt(c.ratio, 8) << "\n";
  }
  return kOk;
}

int family_padic(const Options& o, std::ostream& out) {
  if (o.size < 1) throw InvalidArgument("--size must be positive");
  auto k = static_cast<std::size_t>(o.size);
  Json opts{{"size", std::to_string(o.size)}, {"scheme", "padic-invariant"}};
  if (!o.normal_form.empty()) {
    NormalFormQuadratic nf{parse_normal_form(o.normal_form), parse_rational_list(o.params)};
    Integer p(o.prime ? o.prime : 2);
    auto avoid = load_avoid(o.avoid, {"x", "y"});
    opts["normal-form"] = o.normal_form;
    opts["prime"] = p.get_str();
    opts["avoid"] = poly_strings(avoid);
    CertificateDocument doc{normal_form_subject(nf, p), quad_normal_family(nf, p, k, avoid), reproduction("family", opts)};
    return emit_document(doc, o.out, out);
  }
  if (o.map.empty()) throw InvalidArgument("padic-invariant families need --map or --normal-form");
  MapDefinition def = load_map(o.map);
  if (def.projective || def.dim != 2) throw InvalidArgument("padic-invariant families need a map of A^2");
  BoundaryData bd = boundary_analyze(def.map, false);
  Integer p(o.prime);
  if (o.prime == 0) {
    FixedPointAtInfinity q0;
    q0.point = ProjPoint({Integer(1), Integer(0)});
    p = attractor_box(bd, q0).p;
  }
  auto avoid = load_avoid(o.avoid, def.variables);
  opts["prime"] = p.get_str();
  opts["avoid"] = poly_strings(avoid);
  CertificateDocument doc{case3_subject(def, p), case3_family(bd, p, k, avoid), reproduction("family", opts)};
  return emit_document(doc, o.out, out);
}

int cmd_family(const Options& o, std::ostream& out) {
  Scheme scheme = parse_scheme(o.scheme);
  if (scheme == Scheme::PadicInvariant) return family_padic(o, out);
  if (o.size < 1) throw InvalidArgument("--size must be positive");
  auto k = static_cast<std::size_t>(o.size);
  std::optional<CertificateDocument> base;
  MapDefinition def;
  if (!o.extend.empty()) {
    if (scheme != Scheme::HeightRatio) throw InvalidArgument("--extend supports height-ratio families");
    base = load_document(read_file(o.extend));
    auto v = verify_document(*base);
    if (!v.ok) throw InvalidArgument("--extend: input document does not verify: " + v.reason);
    if (base->subject.at("kind") != "map" || base->family.scheme != Scheme::HeightRatio)
      throw InvalidArgument("--extend: input is not a height-ratio family on a map");
    def = parse_map(base->subject.at("definition").get<std::string>());
    if (!o.map.empty() && print_map(load_map(o.map)) != print_map(def))
      throw InvalidArgument("--extend: --map differs from the document's map");
  } else {
    if (o.map.empty()) throw InvalidArgument("family needs --map");
    def = load_map(o.map);
  }
  if (!def.projective) throw InvalidArgument(o.scheme + " families need a map of P^N");
  MorphismCertificate cert = require_morphism(def.map);
  auto avoid = load_avoid(o.avoid, def.variables);
  Json opts{{"size", std::to_string(o.size)}, {"scheme", o.scheme}, {"avoid", poly_strings(avoid)}};
  FamilyResult fam;
  if (scheme == Scheme::HeightRatio) {
    HeightRatioOptions hro;
    hro.width = o.width;
    opts["width"] = exact_string(o.width);
    std::vector<ProjPoint> seed;
    FamilyResult prior;
    if (base) {
      prior = base->family;
      for (const auto& p : prior.points) {
        std::vector<Integer> c;
        for (const auto& s : p) c.emplace_back(s.get<std::string>());
        seed.emplace_back(std::move(c));
      }
      opts["extends"] = std::to_string(prior.points.size());
      if (k <= seed.size()) throw InvalidArgument("--size must exceed the size of the extended family");
    }
    fam = height_ratio_family(cert, k, avoid, hro, seed, std::move(prior));
  } else {
    if (!avoid.empty()) throw InvalidArgument("prime-degree families do not take --avoid (points are irrational)");
    opts["sampler-bound"] = exact_string(o.sampler_bound);
    fam = prime_degree_family(cert, k, o.sampler_bound);
  }
  CertificateDocument doc{map_subject(def, cert), std::move(fam), reproduction("family", opts)};
  return emit_document(doc, o.out, out);
}

int cmd_elliptic(const Options& o, std::ostream& out) {
  CurveDefinition cd = load_curve(o.curve);
  EllipticCurve E(cd.a, cd.b);
  out << "curve: " << E.to_string() << "  (discriminant " << E.discriminant().get_str() << ")\n";
  out << "C_E: " << E.error_constant() << "\n";
  if (o.point.empty()) return kOk;
  ECPoint P = parse_ec_point(o.point);
  E.require(P);
  int rc = kOk;
  if (o.dbl) out << "2P = " << dbl(E, P) << "\n";
  if (o.mul != 0) out << o.mul << "P = " << mul(E, Integer(o.mul), P) << "\n";
  if (o.height) {
    auto v = o.depth >= 0 ? neron_tate_height_at_depth(E, P, static_cast<int>(o.depth)) : neron_tate_height(E, P, o.width);
    out << "hat h(P) = " << v.value << "  (depth " << v.depth << ", width " << fmt(v.width(), 3) << ")\n";
  }
  if (o.torsion) {
    auto t = torsion_zero_locus_test(E, P, static_cast<int>(o.torsion_bound));
    if (t.kind == TorsionResult::Kind::Torsion) out << "torsion of order " << t.order << "\n";
    else if (t.kind == TorsionResult::Kind::NonTorsion)
      out << "non-torsion: hat h(P) >= " << fmt(t.proof->lower.lo()) << " > 0 (depth " << t.proof->depth << ")\n";
    else {
      out << "undecided: no multiple up to " << o.torsion_bound << " is O and positivity was not certified\n";
      rc = kInconclusive;
    }
  }
  if (o.quadraticity != 0) {
    auto q = quadraticity_check(E, P, o.quadraticity, o.width);
    out << "hat h(" << q.l << "P) = " << q.h_lp.value << "\n";
    out << q.l << "^2 hat h(P) = " << q.scaled << "\n";
    out << "intersect: " << (q.intersects ? "yes" : "no") << "  (width " << fmt(q.width, 3) << ")\n";
    if (!q.intersects) throw Error("quadraticity check failed: enclosures are disjoint");
  }
  if (o.family) {
    if (o.size < 1) throw InvalidArgument("--size must be positive");
    ECPoint b = o.b_point.empty() ? ECPoint::infinity() : parse_ec_point(o.b_point);
    E.require(b);
    ECDynamics dyn{o.m, mul(E, Integer(1 - o.m), b)};
    out << "f = tau_a o [" << o.m << "], a = " << dyn.a << ", b = " << b << "\n";
    auto ls = ab_multipliers(o.m, static_cast<std::size_t>(o.size));
    out << "multipliers:";
    for (const auto& l : ls) out << ' ' << l.get_str();
    out << "\n";
    Json opts{{"size", std::to_string(o.size)}, {"m", std::to_string(o.m)}};
    CertificateDocument doc{elliptic_subject(cd, dyn, P, b), ab_family(E, dyn, P, b, static_cast<std::size_t>(o.size)),
                            reproduction("elliptic", opts)};
    int r = emit_document(doc, o.out.empty() ? std::string() : o.out, out);
    if (r != kOk) rc = r;
  }
  return rc;
}

int cmd_quad(const Options& o, std::ostream& out) {
  if (!o.normal_form.empty()) {
    Options f = o;
    f.scheme = "padic-invariant";
    return family_padic(f, out);
  }
  MapDefinition def = load_map(o.map);
  if (def.projective || def.dim != 2) throw InvalidArgument("quad needs a map of A^2");
  BoundaryData bd = boundary_analyze(def.map);
  out << "map: " << def.map.to_string() << (bd.swapped ? "  (analysed after swapping x and y)" : "") << "\n";
  out << "F = " << bd.F << ", G = " << bd.G << ", H = " << bd.H << ", F0 = " << bd.F0 << ", G0 = " << bd.G0 << "\n";
  out << "case: " << case_name(bd.kind);
  if (bd.phi_a) out << "  phi = [aX : Y], a = " << bd.phi_a->get_str();
  if (bd.phi_b) out << "  phi = [X + bY : Y], b = " << bd.phi_b->get_str();
  out << "\n";
  std::vector<FixedPointAtInfinity> candidates;
  if (bd.kind == BoundaryCase::Case2b) {
    FixedPointAtInfinity q;
    q.point = ProjPoint({Integer(1), Integer(0)});
    candidates.push_back(q);
    out << "fixed point: [1:0:0]\n";
  } else if (bd.kind == BoundaryCase::Case2a || bd.kind == BoundaryCase::DegenerateFZero) {
    out << "no attracting analysis for this case\n";
    return kOk;
  } else {
    auto fp = fixed_points_at_infinity(bd);
    if (fp.everything_fixed) out << "phi is the identity: every point at infinity is fixed\n";
    for (const auto& q : fp.points) {
      out << "fixed point: ";
      if (q.point) out << "[" << (*q.point)[0].get_str() << ":" << (*q.point)[1].get_str() << ":0]";
      else out << "root of minpoly degree " << q.field_degree;
      out << "  multiplicity " << q.multiplicity << "\n";
      candidates.push_back(q);
    }
    if (fp.everything_fixed) {
      FixedPointAtInfinity q;
      q.point = ProjPoint({Integer(1), Integer(0)});
      candidates.push_back(q);
    }
  }
  int rc = kInconclusive;
  for (const auto& q : candidates) {
    if (!q.point) continue;
    AttractorBox box;
    try {
      box = o.prime ? attractor_box_at(bd, q, Integer(o.prime)) : attractor_box(bd, q);
    } catch (const InvalidArgument& e) {
      out << "  " << q.point->to_string() << ": no box (" << e.what() << ")\n";
      continue;
    }
    rc = kOk;
    out << "box at " << q.point->to_string() << ", p = " << box.p.get_str() << ": " << box.describe() << "\n";
    auto samples = box_samples(box, static_cast<std::size_t>(o.samples));
    std::size_t inside = 0, law = 0;
    for (const auto& P : samples) {
      if (box.contains(box.map.evaluate(P))) ++inside;
      if (lambda_growth_report(box, P, 1).law_holds) ++law;
    }
    out << "  self-test: " << inside << "/" << samples.size() << " samples map into U, " << law << "/"
        << samples.size() << " follow " << (samples.empty() ? "" : lambda_growth_report(box, samples[0], 1).law)
        << "\n";
    if (inside != samples.size() || law != samples.size()) throw Error("attractor self-test failed");
    if (!o.point.empty()) {
      AffPoint P = box.to_box(parse_aff_point(o.point));
      auto rep = lambda_growth_report(box, P, static_cast<int>(o.iters));
      out << "  lambda_" << box.p.get_str() << "(f^k P) / log p: " << join(rep.m) << "\n";
      out << "  law " << rep.law << ": " << (rep.law_holds ? "holds" : "fails") << "\n";
    }
  }
  if (rc != kOk) throw Inconclusive{"no rational fixed point at infinity admits a box"};
  return rc;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  CertificateDocument doc = load_document(read_file(o.in));
  auto v = verify_document(doc);
  if (!v.ok) {
    err << "rejected: " << v.reason << "\n";
    return kError;
  }
  out << "verified: " << doc.family.points.size() << " points, " << doc.family.pairs.size()
      << " pair certificates (" << scheme_name(doc.family.scheme) << ")\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetic degrees, canonical heights and certified families of points with maximal arithmetic degree",
               "arithdyn"};
  app.set_version_flag("--version", std::string("arithdyn ") + kToolVersion);
  app.require_subcommand(1);
  Options o;
  auto add_map = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--map", o.map, "map definition file")->check(CLI::ExistingFile);
    if (required) opt->required();
  };
  auto* delta = app.add_subcommand("delta", "degree sequence and bounds for the dynamical degree");
  add_map(delta, true);
  delta->add_option("--iters", o.iters, "number of iterates");
  auto* stable = app.add_subcommand("stable", "algebraic stability up to --iters");
  add_map(stable, true);
  stable->add_option("--iters", o.iters, "number of iterates");
  auto* canht = app.add_subcommand("canht", "canonical height of a point");
  add_map(canht, true);
  canht->add_option("--point", o.point, "point, e.g. [1:2]")->required();
  canht->add_option("--width", o.width, "target enclosure width");
  canht->add_option("--depth", o.depth, "fixed depth instead of a width target");
  auto* alpha = app.add_subcommand("alpha", "arithmetic degree estimate along an orbit");
  add_map(alpha, true);
  alpha->add_option("--point", o.point, "point, e.g. [1:2] or (1, 2)")->required();
  alpha->add_option("--iters", o.iters, "orbit length");
  auto* count = app.add_subcommand("count", "points of bounded height and Schanuel ratios");
  count->add_option("--dim", o.dim, "dimension N of P^N");
  count->add_option("--bound", o.bound, "height bound T");
  auto* family = app.add_subcommand("family", "build a certified family of points with maximal arithmetic degree");
  add_map(family, false);
  family->add_option("--scheme", o.scheme, "height-ratio | prime-degree | padic-invariant");
  family->add_option("--size", o.size, "number of points")->required();
  family->add_option("--avoid", o.avoid, "file of polynomials the new points must avoid")->check(CLI::ExistingFile);
  family->add_option("--extend", o.extend, "certificate document to extend")->check(CLI::ExistingFile);
  family->add_option("--out", o.out, "write the certificate document here");
  family->add_option("--width", o.width, "enclosure width for height-ratio certificates");
  family->add_option("--prime", o.prime, "prime for padic-invariant families");
  family->add_option("--normal-form", o.normal_form, "1.1 | 3.1 | 3.2 (padic-invariant)");
  family->add_option("--params", o.params, "normal form parameters, e.g. \"1, 1\"");
  family->add_option("--sampler-bound", o.sampler_bound, "height bound B for the prime-degree sampler");
  auto* elliptic = app.add_subcommand("elliptic", "elliptic curve tools");
  elliptic->add_option("--curve", o.curve, "curve definition file (E; a, b)")->required()->check(CLI::ExistingFile);
  elliptic->add_option("--point", o.point, "point (x, y) or O");
  elliptic->add_flag("--double", o.dbl, "print 2P");
  elliptic->add_option("--mul", o.mul, "print nP");
  elliptic->add_flag("--height", o.height, "Neron-Tate height of P");
  elliptic->add_option("--width", o.width, "target enclosure width");
  elliptic->add_option("--depth", o.depth, "fixed depth for --height");
  elliptic->add_flag("--torsion", o.torsion, "decide whether P is torsion");
  elliptic->add_option("--torsion-bound", o.torsion_bound, "largest order searched");
  elliptic->add_option("--quadraticity", o.quadraticity, "compare hat h(lP) with l^2 hat h(P)");
  elliptic->add_flag("--family", o.family, "family l x0 + b for f = tau_a o [m], x0 = --point");
  elliptic->add_option("--m", o.m, "multiplier m");
  elliptic->add_option("--b", o.b_point, "point b (a = (1 - m) b)");
  elliptic->add_option("--size", o.size, "family size");
  elliptic->add_option("--out", o.out, "write the certificate document here");
  auto* quad = app.add_subcommand("quad", "boundary analysis and attracting boxes for maps of A^2");
  add_map(quad, false);
  quad->add_option("--prime", o.prime, "use this prime for the boxes");
  quad->add_option("--point", o.point, "report lambda growth of this point (x, y)");
  quad->add_option("--iters", o.iters, "orbit length for --point");
  quad->add_option("--samples", o.samples, "self-test sample count");
  quad->add_option("--normal-form", o.normal_form, "emit a family for 1.1 | 3.1 | 3.2");
  quad->add_option("--params", o.params, "normal form parameters");
  quad->add_option("--size", o.size, "family size");
  quad->add_option("--avoid", o.avoid, "file of polynomials in x, y to avoid")->check(CLI::ExistingFile);
  quad->add_option("--out", o.out, "write the certificate document here");
  auto* verify = app.add_subcommand("verify", "re-check a certificate document");
  verify->add_option("--in", o.in, "certificate document")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kError;
  }
  try {
    if (*delta) return cmd_delta(o, out);
    if (*stable) return cmd_stable(o, out);
    if (*canht) return cmd_canht(o, out);
    if (*alpha) return cmd_alpha(o, out);
    if (*count) return cmd_count(o, out);
    if (*family) return cmd_family(o, out);
    if (*elliptic) return cmd_elliptic(o, out);
    if (*quad) {
      if (o.map.empty() && o.normal_form.empty()) throw InvalidArgument("quad needs --map or --normal-form");
      return cmd_quad(o, out);
    }
    if (*verify) return cmd_verify(o, out, err);
  } catch (const Inconclusive& e) {
    err << "inconclusive: " << e.why << "\n";
    return kInconclusive;
  } catch (const ResourceLimit& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"arithdyn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace arithdyn::cli
