#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "arithdyn/canonical.hpp"
#include "arithdyn/dynamics.hpp"
#include "arithdyn/errors.hpp"
#include "arithdyn/parse.hpp"
#include "oracles.hpp"

using namespace arithdyn;

namespace {

SelfMap M(const std::string& text) { return parse_map(text).map; }

ProjPoint P(std::initializer_list<long> c) { return ProjPoint(std::vector<Integer>(c.begin(), c.end())); }

// Univariate polynomial arithmetic over Q, constant term first.
using Poly = std::vector<Rational>;

Poly padd(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  while (r.size() > 1 && r.back() == 0) r.pop_back();
  return r;
}

Poly pmul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  while (r.size() > 1 && r.back() == 0) r.pop_back();
  return r;
}

long pdeg(const Poly& a) { return (a.size() == 1 && a[0] == 0) ? -1 : static_cast<long>(a.size()) - 1; }

// Degrees of the iterates of an affine plane map, read off its restriction
// to the line (s, 2s + 3). For a map of A^2 the degree of f^k on P^2 is the
// largest degree among the affine components of f^k.
std::vector<long> line_degrees(const std::function<std::pair<Poly, Poly>(const Poly&, const Poly&)>& f,
                               std::size_t n) {
  Poly x{0, 1}, y{3, 2};
  std::vector<long> out;
  for (std::size_t k = 0; k < n; ++k) {
    std::tie(x, y) = f(x, y);
    out.push_back(std::max(pdeg(x), pdeg(y)));
  }
  return out;
}

std::pair<Poly, Poly> n11(const Poly& x, const Poly& y) { return {padd(y, {1}), padd(pmul(x, y), {1})}; }

std::pair<Poly, Poly> n31(const Poly& x, const Poly& y) { return {y, padd(pmul(x, x), {1})}; }

}  // namespace

TEST(Evaluate, Examples) {
  EXPECT_EQ(*M("P1; X,Y; X^2, Y^2").evaluate(P({2, 3})), P({4, 9}));
  EXPECT_FALSE(M("P2; X,Y,Z; Y*Z, X*Z, X*Y").evaluate(P({1, 0, 0})).has_value());
  EXPECT_EQ(*M("P1; X,Y; X^2+Y^2, Y^2").evaluate(P({1, 0})), P({1, 0}));
}

TEST(Orbit, Examples) {
  SelfMap sq = M("P1; X,Y; X^2, Y^2");
  Orbit o = orbit(sq, P({2, 1}), 3);
  EXPECT_EQ(o.points, (std::vector<ProjPoint>{P({2, 1}), P({4, 1}), P({16, 1}), P({256, 1})}));
  EXPECT_FALSE(o.truncated);
  EXPECT_EQ(orbit(sq, P({5, 7}), 0).points, std::vector<ProjPoint>{P({5, 7})});
}

TEST(Orbit, Case11ByHand) {
  SelfMap f = M("A2; x,y; y+1, x*y+1");
  Orbit o = orbit(f, P({1, 1, 1}), 4);
  // (1,1) -> (2,2) -> (3,5) -> (6,16) -> (17,97)
  std::vector<ProjPoint> want{P({1, 1, 1}), P({2, 2, 1}), P({3, 5, 1}), P({6, 16, 1}), P({17, 97, 1})};
  EXPECT_EQ(o.points, want);
  auto aff = orbit(f, AffPoint({Rational(1), Rational(1)}), 4);
  EXPECT_EQ(aff.back(), AffPoint({Rational(17), Rational(97)}));
}

TEST(Orbit, TruncatesAtIndeterminacy) {
  SelfMap c = M("P2; X,Y,Z; Y*Z, X*Z, X*Y");
  Orbit o = orbit(c, P({1, 0, 0}), 3);
  EXPECT_TRUE(o.truncated);
  EXPECT_EQ(o.points.size(), 1u);
}

TEST(Compose, Examples) {
  SelfMap sq = M("P1; X,Y; X^2, Y^2");
  SelfMap s2 = compose(sq, sq);
  EXPECT_EQ(s2.degree(), 4);
  EXPECT_EQ(*s2.evaluate(P({2, 3})), P({16, 81}));

  SelfMap g = M("A2; x,y; y, x^2 + 1");
  SelfMap g2 = compose(g, g);
  EXPECT_EQ(g2.degree(), 2);
  SelfMap want = M("A2; x,y; x^2 + 1, y^2 + 1");
  EXPECT_EQ(g2.components(), want.components());

  SelfMap f = M("A2; x,y; y+1, x*y+1");
  EXPECT_EQ(compose(f, f).degree(), 3);
}

TEST(Compose, AgreesWithStepwiseEvaluation) {
  // Affine maps enter through their homogenizations so every pair composes.
  std::vector<SelfMap> maps{M("P2; X,Y,Z; X^2 + Y*Z, Y^2 - Z^2, Z^2"), M("P2; X,Y,Z; Y*Z + Z^2, X*Y + Z^2, Z^2"),
                            M("P2; X,Y,Z; Y*Z, X*Z, X*Y"), M("P2; X,Y,Z; Y*Z, X^2 - X*Y + 2*Z^2, Z^2")};
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> c(-20, 20);
  int checked = 0;
  for (int it = 0; it < 1000; ++it) {
    const SelfMap& f = maps[it % maps.size()];
    const SelfMap& g = maps[(it / maps.size()) % maps.size()];
    std::vector<Integer> v{c(rng), c(rng), c(rng)};
    if (v[0] == 0 && v[1] == 0 && v[2] == 0) continue;
    ProjPoint x(v);
    auto gx = g.evaluate(x);
    if (!gx) continue;
    auto fgx = f.evaluate(*gx);
    if (!fgx) continue;
    auto direct = compose(f, g).evaluate(x);
    ASSERT_TRUE(direct.has_value());
    ASSERT_EQ(*direct, *fgx);
    ++checked;
  }
  EXPECT_GT(checked, 500);
}

TEST(DegreeSequence, Examples) {
  EXPECT_EQ(degree_sequence(M("P1; X,Y; X^2, Y^2"), 4).degrees(), (std::vector<long>{2, 4, 8, 16}));
  EXPECT_EQ(degree_sequence(M("A2; x,y; y+1, x*y+1"), 4).degrees(), (std::vector<long>{2, 3, 5, 8}));
  EXPECT_EQ(degree_sequence(M("A2; x,y; y, x^2 + 1"), 4).degrees(), (std::vector<long>{2, 2, 4, 4}));
}

TEST(DegreeSequence, MatchesLineRestriction) {
  EXPECT_EQ(degree_sequence(M("A2; x,y; y+1, x*y+1"), 12).degrees(), line_degrees(n11, 12));
  EXPECT_EQ(degree_sequence(M("A2; x,y; y, x^2 + 1"), 8).degrees(), line_degrees(n31, 8));
  EXPECT_EQ(line_degrees(n11, 12), oracle::fibonacci_degrees(12));
}

TEST(DegreeSequence, Submultiplicative) {
  EXPECT_THROW(DegreeSequence({2, 5}), Error);
  for (const char* t : {"A2; x,y; y+1, x*y+1", "A2; x,y; y, x^2 - x*y + 2", "P2; X,Y,Z; Y*Z, X*Z, X*Y",
                        "A2; x,y; x^2 + y, x"}) {
    auto d = degree_sequence(M(t), 6).degrees();
    for (std::size_t m = 1; m <= d.size(); ++m)
      for (std::size_t n = 1; m + n <= d.size(); ++n) ASSERT_LE(d[m + n - 1], d[m - 1] * d[n - 1]) << t;
  }
}

TEST(DegreeSequence, ResourceLimitNamesLastStage) {
  DegreeBudget tiny;
  tiny.max_terms = 30;
  try {
    degree_sequence(M("P2; X,Y,Z; X^2 + Y*Z + Z^2, Y^2 + X*Z, Z^2 + X*Y"), 6, tiny);
    FAIL() << "expected a resource limit";
  } catch (const ResourceLimit& e) {
    EXPECT_GE(e.completed(), 1);
    EXPECT_LT(e.completed(), 6);
  }
}

TEST(Delta, Examples) {
  DeltaEstimate sq = delta_estimate(M("P1; X,Y; X^2, Y^2"), 6);
  EXPECT_TRUE(sq.upper.contains(2.0));
  EXPECT_TRUE(sq.heuristic.contains(2.0));
  EXPECT_LT(sq.upper.width(), 1e-12);

  double phi = (1 + std::sqrt(5.0)) / 2;
  DeltaEstimate fib = delta_estimate(M("A2; x,y; y+1, x*y+1"), 12);
  EXPECT_LT(std::abs(fib.heuristic.mid() - phi), 1e-2);
  EXPECT_GE(fib.upper.hi(), phi);

  DeltaEstimate c31 = delta_estimate(M("A2; x,y; y, x^2 + 1"), 8);
  EXPECT_LT(std::abs(c31.upper.mid() - std::sqrt(2.0)), 1e-2);
  EXPECT_GE(c31.upper.hi(), std::sqrt(2.0));
}

TEST(Delta, UpperBoundNonIncreasing) {
  SelfMap f = M("A2; x,y; y+1, x*y+1");
  double prev = INFINITY;
  for (std::size_t n = 2; n <= 10; ++n) {
    double u = delta_estimate(f, n).upper.hi();
    ASSERT_LE(u, prev);
    prev = u;
  }
}

TEST(Stability, Examples) {
  StabilityReport sq = is_stable_upto(M("P1; X,Y; X^2, Y^2"), 6);
  EXPECT_TRUE(sq.stable);
  EXPECT_FALSE(sq.first_drop);
  StabilityReport c31 = is_stable_upto(M("A2; x,y; y, x^2 + 1"), 6);
  EXPECT_FALSE(c31.stable);
  EXPECT_EQ(c31.first_drop, 2u);
  StabilityReport c11 = is_stable_upto(M("A2; x,y; y+1, x*y+1"), 6);
  EXPECT_EQ(c11.first_drop, 2u);
  SelfMap f2 = iterate(M("A2; x,y; y, x^2 + 1"), 2);
  EXPECT_TRUE(is_stable_upto(f2, 8).stable);
}

TEST(Stability, CertifiedMorphismsAreStable) {
  for (const char* t : {"P1; X,Y; X^2+Y^2, Y^2", "P2; X,Y,Z; X^2 + Z^2, Y^2 + X*Z, Z^2", "P1; X,Y; X^3 + 2*Y^3, Y^3"}) {
    SelfMap f = M(t);
    auto cert = certify_morphism(f);
    ASSERT_TRUE(std::holds_alternative<MorphismCertificate>(cert)) << t;
    EXPECT_TRUE(is_stable_upto(f, 4).stable) << t;
  }
}
