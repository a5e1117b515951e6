#ifndef ARITHDYN_CERTIFY_HPP
#define ARITHDYN_CERTIFY_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arithdyn/algebraic.hpp"
#include "arithdyn/canonical.hpp"
#include "arithdyn/errors.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/interval.hpp"
#include "arithdyn/multipoly.hpp"
#include "arithdyn/selfmap.hpp"
#include "json.hpp"

namespace arithdyn {

using Json = nlohmann::json;

enum class Scheme { HeightRatio, PrimeDegree, PadicInvariant };

std::string scheme_name(Scheme s);  // "height-ratio", "prime-degree", "padic-invariant"
Scheme parse_scheme(const std::string& name);

// Exact data for one pair of points; all numbers are decimal strings.
struct DisjointnessCertificate {
  Scheme scheme = Scheme::HeightRatio;
  Json payload;
};

struct VerifyOutcome {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
  static VerifyOutcome fail(std::string why) { return {false, std::move(why)}; }
};

// Payload-only re-check: interval exclusions, valuations and polynomial
// facts recorded in the certificate. Nothing dynamical is recomputed.
VerifyOutcome verify_disjointness(const DisjointnessCertificate& cert);

// ---- height ratio ----

// Certifies hat h(x)/hat h(y) is not a power of d by exact comparison of the
// rational endpoints of the enclosures. nullopt when an exponent cannot be
// excluded (deepen and retry).
std::optional<DisjointnessCertificate> ratio_not_power(const CanonicalHeightValue& hx, const CanonicalHeightValue& hy,
                                                       int d);
// K = ceil(|log(hi_x/lo_y)| / log d) + 1, the exponent range checked exactly.
long ratio_exponent_bound(const Rational& hi_x, const Rational& lo_y, int d);

// ---- valuation lemma ----

struct LemNumEntry {
  Integer l_i;
  long valuation;  // v_p((l_i / l)^e), e = 2 with squares else 1
};

struct LemNumResult {
  Integer l;  // a prime
  std::vector<LemNumEntry> table;
};

// Least prime p coprime to every l_i and to delta; then (l_i/p)^e has
// p-adic valuation -e while every power of delta has valuation 0.
LemNumResult lem_num_solver(const Rational& delta, bool squares, const std::vector<Integer>& l_list);
VerifyOutcome verify_lem_num(const LemNumResult& r, const Rational& delta, bool squares,
                             const std::vector<Integer>& l_list);

// ---- prime degree ----

// Root of t^p - q with p the least prime > A and q the least prime with
// log(q)/p > B.
struct PrimeDegreeSample {
  AlgebraicNumber value;
  Integer p;
  Integer q;  // Eisenstein prime
};
PrimeDegreeSample prime_degree_sampler(long A, double B);

// Eisenstein criterion at q for an integer polynomial (constant term first).
bool is_eisenstein(const std::vector<Integer>& poly, const Integer& q);

// Minimal polynomial of f(x) for x a root of `minpoly` and f a self-map of
// P^1 read in the chart Y = 1; nullopt when f(x) = [1:0].
std::optional<std::vector<Integer>> pushforward_minpoly(const SelfMap& f, const std::vector<Integer>& minpoly);
// deg f^m(x) for m = 0..count-1; points at infinity have degree 1.
std::vector<long> iterate_degrees(const SelfMap& f, const std::vector<Integer>& minpoly, std::size_t count);

struct DegreeTarget {
  std::vector<Integer> minpoly;      // of the target point y
  std::optional<Integer> eisenstein;  // irreducibility witness, if any
  std::vector<long> degrees;          // deg f^m(y), m = 0, 1, ...
};

// Any collision f^a(x) = f^b(y) forces p | deg(y) because every fiber
// factor [K(f^i x):K(f^(i+1) x)] is at most d < p. Requires p prime, p > d
// and p not dividing the degree of the target.
DisjointnessCertificate prime_degree_disjointness(const SelfMap& f, const PrimeDegreeSample& x,
                                                  const DegreeTarget& target);
// Recomputes the recorded target degrees by pushforward along f.
VerifyOutcome verify_prime_degree_against(const SelfMap& f, const DisjointnessCertificate& cert);

// ---- p-adic ----

// First point x with v_p(x_i) = a_i exactly, x_i = p^(a_i) u_i with unit u_i
// taken from the positive integers prime to p, tuples ordered by largest
// unit index and then lexicographically, that avoids every polynomial.
struct BoxSample {
  AffPoint point;
  std::size_t examined = 0;
};
BoxSample padic_box_sampler(const Integer& p, const std::vector<long>& a, const std::vector<MultiPoly>& avoid,
                            std::size_t fuel = 1'000'000);

// Level certificate: distinct levels whose ratio is rational, with delta a
// real quadratic irrational whose powers are never rational except delta^0.
DisjointnessCertificate padic_level_certificate(const Integer& p, const std::vector<Integer>& delta_minpoly,
                                                long level_x, long level_y);
// Invariant certificate: an exact p-adic invariant that is constant along
// orbits takes different values.
DisjointnessCertificate padic_invariant_certificate(const Integer& p, const std::string& invariant, long value_x,
                                                    long value_y);
// Real quadratic t^2 + bt + c (monic integer, constant first) with b != 0
// and non-square positive discriminant.
bool quadratic_powers_irrational(const std::vector<Integer>& minpoly);

// ---- gap window ----

// Parameterized line P^1 -> P^N given by linear forms in two variables.
struct LineParam {
  std::vector<MultiPoly> forms;
  ProjPoint operator()(const ProjPoint& a) const;
};
LineParam identity_line(const std::vector<std::string>& vars);
// |h(line(a)) - h(a)| bound from the row sums and an invertible 2x2 minor.
Interval line_distortion(const LineParam& line);

struct Seed {
  ProjPoint point;
  CanonicalHeightValue height;
};

struct GapStructure {
  std::vector<Interval> targets;  // log hat h of the seeds
  Interval modulus;               // log d
  double floor = 0;               // above this the pattern repeats mod log d
  double c = 0;                   // comparison constant
  std::vector<std::pair<double, double>> gaps;
};

struct GapSearchResult {
  ProjPoint parameter;  // a on P^1
  ProjPoint point;      // line(a)
  CanonicalHeightValue height;
  PositivityProof positivity;
  std::vector<DisjointnessCertificate> certificates;  // one per seed
  std::pair<double, double> window;
  GapStructure structure;
};

class GapExhausted : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

struct GapSearchOptions {
  double width = 1e-12;
  double height_cap = 40.0;  // log of the largest parameter height searched
  std::size_t fuel = 200'000;
};

GapSearchResult gap_window_search(const MorphismCertificate& cert, const LineParam& line,
                                  const std::vector<Seed>& seeds, const std::vector<MultiPoly>& avoid,
                                  const GapSearchOptions& options = {});

// ---- family builder ----

struct PairCertificate {
  std::size_t i = 0, j = 0;
  DisjointnessCertificate certificate;
};

struct AvoidRecord {
  std::string poly;
  std::size_t from = 0;  // checked for points with index >= from
};

struct FamilyResult {
  Scheme scheme = Scheme::HeightRatio;
  std::vector<Json> points;
  std::vector<Json> maximality;
  std::vector<PairCertificate> pairs;
  std::vector<AvoidRecord> avoided;
  bool complete = false;
  std::size_t examined = 0;
};

template <class Point>
struct FamilyContext {
  std::function<std::optional<Point>()> next;  // canonical enumeration order
  std::function<bool(const Point&)> admissible;
  std::function<std::optional<Json>(const Point&)> maximality;
  std::function<std::optional<DisjointnessCertificate>(const Point&, const Point&)> disjoint;
  std::function<Json(const Point&)> to_json;
  std::size_t fuel = 10'000;
};

// Inductive loop: each candidate must be admissible, carry a maximality
// certificate and be certified disjoint from every point already chosen.
// `seed` holds points accepted by an earlier call (extension of a family).
template <class Point>
FamilyResult family_builder(Scheme scheme, std::size_t k, FamilyContext<Point>& ctx,
                            std::vector<Point> seed = {}, FamilyResult base = {}) {
  if (k < 1) throw InvalidArgument("family_builder: size must be at least 1");
  FamilyResult out = std::move(base);
  out.scheme = scheme;
  std::vector<Point> chosen = std::move(seed);
  if (chosen.size() != out.points.size()) throw InvalidArgument("family_builder: seed does not match base family");
  while (chosen.size() < k && out.examined < ctx.fuel) {
    auto cand = ctx.next();
    if (!cand) break;
    ++out.examined;
    if (ctx.admissible && !ctx.admissible(*cand)) continue;
    if (std::find(chosen.begin(), chosen.end(), *cand) != chosen.end()) continue;
    auto max_cert = ctx.maximality(*cand);
    if (!max_cert) continue;
    std::vector<PairCertificate> pairs;
    bool ok = true;
    for (std::size_t i = 0; i < chosen.size() && ok; ++i) {
      auto c = ctx.disjoint(chosen[i], *cand);
      if (!c) ok = false;
      else pairs.push_back({i, chosen.size(), std::move(*c)});
    }
    if (!ok) continue;
    out.points.push_back(ctx.to_json(*cand));
    out.maximality.push_back(std::move(*max_cert));
    for (auto& p : pairs) out.pairs.push_back(std::move(p));
    chosen.push_back(std::move(*cand));
  }
  out.complete = chosen.size() >= k;
  return out;
}

// Integral points [n_1 : ... : n_N : 1] with n_i >= 0, by largest entry and
// then lexicographically.
class IntegralPointStream {
 public:
  explicit IntegralPointStream(std::size_t n) : n_(n) {}
  std::optional<ProjPoint> next();

 private:
  std::size_t n_;
  long bound_ = 0;
  std::vector<long> cur_;
};

// Height-ratio family on a certified morphism: candidates from
// IntegralPointStream, maximality by positive_canonical_height, pairs by
// ratio_not_power at the given width.
struct HeightRatioOptions {
  double width = 1e-12;
  std::size_t fuel = 10'000;
};
FamilyResult height_ratio_family(const MorphismCertificate& cert, std::size_t k, const std::vector<MultiPoly>& avoid,
                                 const HeightRatioOptions& options = {}, const std::vector<ProjPoint>& seed = {},
                                 FamilyResult base = {});

// Prime-degree family on P^1: sampler outputs with successive primes above
// max(d, previous), mutual certificates for every pair.
FamilyResult prime_degree_family(const MorphismCertificate& cert, std::size_t k, double B = 0,
                                 std::size_t orbit_degrees = 4);

// Rational form of a double endpoint, used in payloads.
std::string exact_string(double x);

}  // namespace arithdyn

#endif
