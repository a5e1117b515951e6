#include <gtest/gtest.h>

#include <cmath>
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

MorphismCertificate certify(const std::string& text) {
  auto r = certify_morphism(M(text));
  if (!std::holds_alternative<MorphismCertificate>(r))
    throw std::runtime_error("not a morphism: " + std::get<NotAMorphism>(r).reason);
  return std::get<MorphismCertificate>(r);
}

ProjPoint random_point(std::mt19937_64& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<long> c(-bound, bound);
  while (true) {
    std::vector<Integer> v(n + 1);
    for (auto& x : v) x = c(rng);
    bool zero = true;
    for (auto& x : v) zero = zero && x == 0;
    if (!zero) return ProjPoint(v);
  }
}

const char* kMorphisms[] = {"P1; X,Y; X^2, Y^2", "P1; X,Y; X^2+Y^2, Y^2", "P1; X,Y; X^3 + 2*Y^3, Y^3",
                            "P2; X,Y,Z; X^2 + Z^2, Y^2 + X*Z, Z^2", "P1; X,Y; 3*X^2 - Y^2, X*Y + 2*Y^2"};

}  // namespace

TEST(CertifyMorphism, PowerMapHasZeroConstants) {
  for (int d : {2, 3, 5}) {
    std::string t = "P1; X,Y; X^" + std::to_string(d) + ", Y^" + std::to_string(d);
    MorphismCertificate c = certify(t);
    EXPECT_EQ(c.c_plus().hi(), 0.0) << t;
    EXPECT_EQ(c.c_minus().hi(), 0.0) << t;
  }
}

TEST(CertifyMorphism, SumOfSquares) {
  MorphismCertificate c = certify("P1; X,Y; X^2+Y^2, Y^2");
  EXPECT_TRUE(oracle::log_in(2, c.c_plus().lo(), c.c_plus().hi()));
  EXPECT_NE(oracle::sylvester({1, 0, 1}, {0, 0, 1}), 0);
  EXPECT_GE(c.c_minus().lo(), 0.0);
}

TEST(CertifyMorphism, RejectsCommonZero) {
  auto r = certify_morphism(M("P1; X,Y; X^2, X*Y"));
  EXPECT_TRUE(std::holds_alternative<NotAMorphism>(r));
  EXPECT_TRUE(std::holds_alternative<NotAMorphism>(certify_morphism(M("P2; X,Y,Z; Y*Z, X*Z, X*Y"))));
  EXPECT_TRUE(std::holds_alternative<NotAMorphism>(certify_morphism(M("P1; X,Y; X^2 - Y^2, X*Y - Y^2"))));
}

TEST(CertifyMorphism, CofactorIdentityIsChecked) {
  MorphismCertificate c = certify("P1; X,Y; X^2+Y^2, Y^2");
  Cofactors bad = c.cofactors();
  bad.r[0] += 1;
  EXPECT_THROW(MorphismCertificate(c.map(), bad), InvalidArgument);
}

TEST(CertifyMorphism, TwoSidedBoundOnRandomPoints) {
  std::mt19937_64 rng(43);
  for (const char* t : kMorphisms) {
    MorphismCertificate c = certify(t);
    int d = c.degree();
    for (int it = 0; it < 100; ++it) {
      ProjPoint x = random_point(rng, c.map().dim(), 1000);
      Interval hx = weil_height(x), hfx = weil_height(*c.map().evaluate(x));
      Interval lower = Interval(d) * hx - c.c_minus(), upper = Interval(d) * hx + c.c_plus();
      ASSERT_LE(lower.lo(), hfx.hi()) << t << " " << x;
      ASSERT_LE(hfx.lo(), upper.hi()) << t << " " << x;
    }
  }
}

TEST(CanonicalHeight, PowerMap) {
  MorphismCertificate c = certify("P1; X,Y; X^2, Y^2");
  CanonicalHeightValue v = canonical_height(c, P({2, 1}), 1e-12);
  EXPECT_TRUE(oracle::log_in(2, v.value.lo(), v.value.hi()));
  EXPECT_LE(v.width(), 1e-12);
  CanonicalHeightValue deep = canonical_height_at_depth(c, P({2, 1}), 40);
  EXPECT_TRUE(oracle::log_in(2, deep.value.lo(), deep.value.hi()));
}

TEST(CanonicalHeight, FixedPointAtInfinity) {
  MorphismCertificate c = certify("P1; X,Y; X^2+Y^2, Y^2");
  EXPECT_TRUE(canonical_height(c, P({1, 0}), 1e-10).value.contains(0.0));
}

TEST(CanonicalHeight, OrbitOracle) {
  // h(f^20 x)/2^20 from an independent integer iteration; the true value is
  // within log 2 / 2^20 of it.
  MorphismCertificate c = certify("P1; X,Y; X^2+Y^2, Y^2");
  std::vector<oracle::Z> F{1, 0, 1}, G{0, 0, 1};
  oracle::Z a = 1, b = 1;
  for (int k = 0; k < 20; ++k) std::tie(a, b) = oracle::step_binary(F, G, a, b);
  double ref = oracle::log_ref(oracle::Q(oracle::height_mult(a, b))) / std::ldexp(1.0, 20);
  double slack = std::log(2.0) / std::ldexp(1.0, 20);
  CanonicalHeightValue v = canonical_height(c, P({1, 1}), 1e-9);
  EXPECT_TRUE(v.value.is_positive());
  EXPECT_LE(v.value.lo(), ref + slack + 1e-12);
  EXPECT_GE(v.value.hi(), ref - slack - 1e-12);
}

TEST(CanonicalHeight, WidthBoundAndTelescoping) {
  std::mt19937_64 rng(47);
  for (const char* t : kMorphisms) {
    MorphismCertificate c = certify(t);
    int d = c.degree();
    double C = c.constant().hi();
    for (int it = 0; it < 10; ++it) {
      ProjPoint x = random_point(rng, c.map().dim(), 50);
      for (int n = 0; n < 12; ++n) {
        CanonicalHeightValue a = canonical_height_at_depth(c, x, n), b = canonical_height_at_depth(c, x, n + 1);
        ASSERT_TRUE(a.value.intersects(b.value)) << t << " " << x << " n=" << n;
        ASSERT_LE(a.width(), 2 * C / (std::pow(d, n) * (d - 1)) * (1 + 1e-9) + 1e-12);
        if (C > 0) ASSERT_LE(b.width(), a.width() / d * (1 + 1e-6) + 1e-12);
      }
    }
  }
}

TEST(CanonicalHeight, FunctionalEquation) {
  std::mt19937_64 rng(53);
  for (const char* t : kMorphisms) {
    MorphismCertificate c = certify(t);
    int d = c.degree();
    for (int it = 0; it < 20; ++it) {
      ProjPoint x = random_point(rng, c.map().dim(), 100);
      CanonicalHeightValue hx = canonical_height(c, x, 1e-9), hfx = canonical_height(c, *c.map().evaluate(x), 1e-9);
      ASSERT_TRUE(hfx.value.intersects(Interval(d) * hx.value)) << t << " " << x;
      ASSERT_LE(std::abs(hx.value.mid() - weil_height(x).mid()), c.constant().hi() / (d - 1) + 1e-9);
    }
  }
}

TEST(CanonicalHeight, Deterministic) {
  MorphismCertificate c = certify("P1; X,Y; X^2+Y^2, Y^2");
  auto a = canonical_height_at_depth(c, P({3, 7}), 25), b = canonical_height_at_depth(c, P({3, 7}), 25);
  EXPECT_EQ(a.value, b.value);
}

TEST(CanonicalHeight, BudgetExceededCarriesPartial) {
  MorphismCertificate c = certify("P1; X,Y; X^2+Y^2, Y^2");
  HeightBudget b;
  b.max_depth = 3;
  try {
    canonical_height(c, P({2, 1}), 1e-15, b);
    FAIL();
  } catch (const HeightBudgetExceeded& e) {
    EXPECT_EQ(e.partial().depth, 3);
    EXPECT_TRUE(e.partial().value.is_positive());
  }
}

TEST(Positivity, Examples) {
  MorphismCertificate sq = certify("P1; X,Y; X^2, Y^2");
  auto p = positive_canonical_height(sq, P({2, 1}));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->depth, 0);
  EXPECT_FALSE(positive_canonical_height(sq, P({1, 1})));
  MorphismCertificate s2 = certify("P1; X,Y; X^2+Y^2, Y^2");
  auto q = positive_canonical_height(s2, P({1, 1}));
  ASSERT_TRUE(q);
  EXPECT_LE(q->depth, 6);
  EXPECT_GT(q->lower.lo(), 0.0);
  EXPECT_EQ(q->iterate, orbit(s2.map(), P({1, 1}), q->depth).points.back());
}

TEST(Alpha, Examples) {
  MorphismCertificate sq = certify("P1; X,Y; X^2, Y^2");
  ArithDegreeEstimate a = alpha_estimate(sq.map(), P({2, 1}), 10, &sq);
  ASSERT_TRUE(a.exact);
  EXPECT_EQ(*a.exact, 2);
  ArithDegreeEstimate fixed = alpha_estimate(sq.map(), P({1, 1}), 10, &sq);
  EXPECT_FALSE(fixed.exact);
  EXPECT_LE(fixed.upper.hi(), 1.0 + 1e-9);
  EXPECT_GE(fixed.lower.lo(), 1.0 - 1e-9);

  SelfMap f = M("A2; x,y; y+1, x*y+1");
  ProjPoint x = AffPoint({Rational(1, 2), Rational(3, 2)}).to_projective();
  ArithDegreeEstimate fib = alpha_estimate(f, x, 14);
  ASSERT_TRUE(fib.last_ratio);
  double heur = delta_estimate(f, 12).heuristic.mid();
  EXPECT_LT(std::abs(fib.last_ratio->mid() - heur), 0.05);
}

TEST(Alpha, TruncatedOrbit) {
  SelfMap c = M("P2; X,Y,Z; Y*Z, X*Z, X*Y");
  EXPECT_THROW(alpha_estimate(c, P({1, 0, 0}), 5), TruncatedOrbit);
}

TEST(Alpha, BoundedByDegreeOnMorphisms) {
  std::mt19937_64 rng(59);
  for (const char* t : kMorphisms) {
    MorphismCertificate c = certify(t);
    for (int it = 0; it < 20; ++it) {
      ProjPoint x = random_point(rng, c.map().dim(), 30);
      ArithDegreeEstimate a = alpha_estimate(c.map(), x, 12);
      ASSERT_LE(a.upper.hi(), c.degree() + 0.1) << t << " " << x;
      ASSERT_LE(a.lower.lo(), a.upper.hi());
    }
  }
}
