#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "arithdyn/arith.hpp"
#include "arithdyn/errors.hpp"
#include "arithdyn/interval.hpp"
#include "arithdyn/linear.hpp"
#include "arithdyn/multipoly.hpp"
#include "arithdyn/parse.hpp"
#include "oracles.hpp"

using namespace arithdyn;

namespace {

const std::vector<std::string> kXY{"X", "Y"};
const std::vector<std::string> kT{"t"};

MultiPoly X() { return MultiPoly::variable(kXY, 0); }
MultiPoly Y() { return MultiPoly::variable(kXY, 1); }
MultiPoly C(const std::vector<std::string>& v, long c) { return MultiPoly::constant(v, c); }
MultiPoly P(const std::string& s) { return parse_polynomial(s, kXY); }

MultiPoly upoly(const std::vector<long>& c) {
  std::vector<Rational> q(c.begin(), c.end());
  return from_univariate(q, "t");
}

// prod (t - r_i)
MultiPoly from_roots(const std::vector<long>& roots) {
  MultiPoly p = C(kT, 1);
  for (long r : roots) p = p * (MultiPoly::variable(kT, 0) - C(kT, r));
  return p;
}

MultiPoly random_poly(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg), coef(-3, 3);
  MultiPoly p(kXY);
  int d = deg(rng);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) {
      int c = coef(rng);
      if (c) p.add_term(Monomial{unsigned(i), unsigned(j)}, c);
    }
  return p;
}

}  // namespace

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(Rational(8), Integer(2)).value(), 3);
  EXPECT_EQ(valuation(Rational(8, 9), Integer(3)).value(), -2);
  EXPECT_EQ(valuation(Rational(12), Integer(5)).value(), 0);
}

TEST(Valuation, ZeroIsInfinite) {
  Valuation v = valuation(Rational(0), Integer(7));
  EXPECT_TRUE(v.is_infinite());
  EXPECT_THROW(v.value(), InvalidArgument);
  EXPECT_GT(v, Valuation::finite(1000000));
}

TEST(Valuation, RejectsComposite) {
  EXPECT_THROW(valuation(Rational(8), Integer(4)), InvalidArgument);
  EXPECT_THROW(valuation(Rational(8), Integer(1)), InvalidArgument);
}

TEST(Valuation, RandomProperties) {
  std::mt19937_64 rng(11);
  const long primes[] = {2, 3, 5, 7};
  for (int it = 0; it < 10000; ++it) {
    Rational a = oracle::random_rational(rng, 500), b = oracle::random_rational(rng, 500);
    if (a == 0 || b == 0) continue;
    long p = primes[it % 4];
    Integer P(p);
    long va = valuation(a, P).value(), vb = valuation(b, P).value();
    ASSERT_EQ(va, oracle::val(a, p));
    ASSERT_EQ(valuation(Rational(a * b), P).value(), va + vb);
    Rational s = a + b;
    if (s != 0) ASSERT_GE(valuation(s, P).value(), std::min(va, vb));
  }
}

TEST(Primes, SmallTable) {
  std::vector<long> got;
  for (long n = 0; n < 60; ++n)
    if (is_prime(Integer(n))) got.push_back(n);
  EXPECT_EQ(got, (std::vector<long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59}));
  EXPECT_EQ(next_prime(Integer(23)), 29);
  EXPECT_TRUE(is_prime(Integer("18446744073709551557")));  // largest prime below 2^64
}

TEST(PolyGcd, Examples) {
  EXPECT_EQ(poly_gcd(X().pow(2) * Y(), X() * Y().pow(2)), X() * Y());
  EXPECT_EQ(poly_gcd(X().pow(2) + Y().pow(2), Y().pow(2)), C(kXY, 1));
  MultiPoly f = Y() * (Y() - X());
  MultiPoly g = poly_gcd(f, MultiPoly(kXY));
  EXPECT_EQ(g, f.normalized());
  EXPECT_EQ(g.degree(), 2);
}

TEST(PolyGcd, BothZeroRejected) { EXPECT_THROW(poly_gcd(MultiPoly(kXY), MultiPoly(kXY)), InvalidArgument); }

TEST(PolyGcd, Normalization) {
  MultiPoly g = poly_gcd(P("-6*X*Y + 3/2*Y"), P("Y*(-4*X + 1)"));
  EXPECT_GT(g.leading_coefficient(), 0);
  EXPECT_EQ(g.numerator_content(), 1);
  EXPECT_EQ(g.denominator_lcm(), 1);
}

TEST(PolyGcd, CommonFactorProperty) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int it = 0; it < 200; ++it) {
    MultiPoly f = random_poly(rng, 2), g = random_poly(rng, 2), h = random_poly(rng, 2);
    if (h.is_zero() || (f.is_zero() && g.is_zero())) continue;
    MultiPoly lhs = poly_gcd(f * h, g * h);
    MultiPoly rhs = (poly_gcd(f, g) * h).normalized();
    ASSERT_EQ(lhs, rhs) << f << " | " << g << " | " << h;
    ASSERT_TRUE(divide_exact(f * h, lhs).has_value());
    ++checked;
  }
  EXPECT_GT(checked, 150);
}

TEST(Resultant, Examples) {
  MultiPoly f = upoly({1, 0, 1});
  EXPECT_EQ(resultant(f, f), 0);
  Rational r = resultant(upoly({-2, 1}), upoly({-3, 1}));
  EXPECT_EQ(abs(r), 1);
  EXPECT_EQ(r, oracle::sylvester({-2, 1}, {-3, 1}));
  EXPECT_EQ(resultant(upoly({1, 0, 1}), upoly({-2, 0, 1})), 9);
}

TEST(Resultant, DifferentVariablesRejected) {
  MultiPoly s = from_univariate({Rational(1), Rational(1)}, "s");
  EXPECT_THROW(resultant(upoly({1, 1}), s), InvalidArgument);
}

TEST(Resultant, RootProducts) {
  // Res(prod (t - r_i), g) = prod g(r_i) for monic f.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> root(-4, 4), n(1, 4);
  for (int it = 0; it < 100; ++it) {
    std::vector<long> ra(n(rng)), rb(n(rng));
    for (auto& r : ra) r = root(rng);
    for (auto& r : rb) r = root(rng);
    MultiPoly f = from_roots(ra), g = from_roots(rb);
    Rational expect = 1;
    for (long r : ra) {
      std::vector<Rational> pt{Rational(r)};
      expect *= g.evaluate(pt);
    }
    ASSERT_EQ(resultant(f, g), expect);
  }
}

TEST(Resultant, ZeroIffCommonFactor) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> deg(1, 5), coef(-2, 2);
  int zeros = 0;
  for (int it = 0; it < 300; ++it) {
    std::vector<Rational> a(deg(rng) + 1), b(deg(rng) + 1);
    for (auto& c : a) c = coef(rng);
    for (auto& c : b) c = coef(rng);
    a.back() = 1;
    b.back() = coef(rng) >= 0 ? 1 : -1;
    MultiPoly f = from_univariate(a, "t"), g = from_univariate(b, "t");
    Rational r = resultant(f, g);
    ASSERT_EQ(r, oracle::sylvester(a, b));
    bool common = poly_gcd(f, g).degree() > 0;
    ASSERT_EQ(r == 0, common);
    zeros += common;
  }
  EXPECT_GT(zeros, 0);
}

TEST(LinearSolve, Examples) {
  Matrix id{{1, 0}, {0, 1}};
  auto x = exact_linear_solve(id, {Rational(4), Rational(-1, 3)});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (std::vector<Rational>{4, Rational(-1, 3)}));
  EXPECT_FALSE(exact_linear_solve({{1, 1}, {1, 1}}, {Rational(1), Rational(2)}));
  auto y = exact_linear_solve({{2}}, {Rational(3)});
  ASSERT_TRUE(y);
  EXPECT_EQ((*y)[0], Rational(3, 2));
}

TEST(LinearSolve, DimensionMismatch) {
  EXPECT_THROW(exact_linear_solve({{1, 2}, {3, 4}}, {Rational(1)}), InvalidArgument);
  EXPECT_THROW(exact_linear_solve({{1, 2}, {3}}, {Rational(1), Rational(2)}), InvalidArgument);
}

TEST(LinearSolve, RectangularBackSubstitution) {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 100; ++it) {
    Matrix a(3, std::vector<Rational>(5));
    for (auto& row : a)
      for (auto& c : row) c = oracle::random_rational(rng, 6);
    std::vector<Rational> x0(5);
    for (auto& c : x0) c = oracle::random_rational(rng, 6);
    std::vector<Rational> b(3, 0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 5; ++j) b[i] += a[i][j] * x0[j];
    auto x = exact_linear_solve(a, b);
    ASSERT_TRUE(x);
    for (int i = 0; i < 3; ++i) {
      Rational s = 0;
      for (int j = 0; j < 5; ++j) s += a[i][j] * (*x)[j];
      ASSERT_EQ(s, b[i]);
    }
  }
}

TEST(Determinant, MatchesOracle) {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 50; ++it) {
    Matrix a(4, std::vector<Rational>(4));
    for (auto& row : a)
      for (auto& c : row) c = oracle::random_rational(rng, 9);
    ASSERT_EQ(determinant(a), oracle::det(a));
  }
}

TEST(Interval, LogContainsReference) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> n(1, 1000000000);
  for (int it = 0; it < 2000; ++it) {
    Rational q(n(rng), n(rng));
    q.canonicalize();
    Interval l = log_of(q);
    ASSERT_TRUE(oracle::log_in(q, l.lo(), l.hi())) << q;
    double scale = std::log(std::max(q.get_num().get_d(), q.get_den().get_d()));
    ASSERT_LE(l.width(), 32 * 2.3e-16 * std::max(1.0, scale));
  }
}

TEST(Interval, ExactInputsStayExact) {
  EXPECT_EQ(log_of(Rational(1)), Interval(0.0));
  Interval a(1.0, 2.0), b(3.0, 5.0);
  Interval s = a + b;
  EXPECT_TRUE(s.contains(4.0));
  EXPECT_TRUE(s.contains(7.0));
  Interval p = a * b;
  EXPECT_TRUE(p.contains(3.0) && p.contains(10.0));
}

TEST(Interval, HighPrecisionPath) {
  Rational q(Integer("1000000000000000000000000000001"), Integer("1000000000000000000000000000000"));
  Interval l = log_of(q, 1e-40);
  EXPECT_TRUE(oracle::log_in(q, l.lo(), l.hi()));
  EXPECT_GT(l.lo(), 0.0);
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(to_string(Rational(-3, 2)), "-3/2");
  EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
  EXPECT_THROW(parse_rational("abc"), InvalidArgument);
}
