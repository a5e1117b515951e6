#include "arithdyn/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace upoly {

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const UPoly& p) {
  UPoly q = p;
  trim(q);
  return static_cast<int>(q.size()) - 1;
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

UPoly sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  UPoly bb = b;
  trim(bb);
  if (bb.empty()) throw InvalidArgument("polynomial division by zero");
  UPoly r = a;
  trim(r);
  if (r.size() < bb.size()) return {UPoly{}, r};
  UPoly q(r.size() - bb.size() + 1);
  const Rational& lb = bb.back();
  while (r.size() >= bb.size()) {
    std::size_t shift = r.size() - bb.size();
    Rational c = r.back() / lb;
    q[shift] = c;
    for (std::size_t i = 0; i < bb.size(); ++i) r[shift + i] -= c * bb[i];
    trim(r);
  }
  trim(q);
  return {q, r};
}

UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  Rational l = a.back();
  for (auto& c : a) c /= l;
  return a;
}

UPoly derivative(const UPoly& p) {
  UPoly r;
  for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * static_cast<unsigned long>(i));
  trim(r);
  return r;
}

UPoly squarefree_part(const UPoly& p) {
  UPoly q = p;
  trim(q);
  if (q.empty()) throw InvalidArgument("squarefree part of zero");
  UPoly g = gcd(q, derivative(q));
  UPoly s = divmod(q, g).first;
  Rational l = s.back();
  for (auto& c : s) c /= l;
  return s;
}

Rational evaluate(const UPoly& p, const Rational& x) {
  Rational s = 0;
  for (std::size_t i = p.size(); i-- > 0;) s = s * x + p[i];
  return s;
}

std::vector<Integer> primitive(const UPoly& p) {
  UPoly q = p;
  trim(q);
  if (q.empty()) throw InvalidArgument("primitive part of zero");
  Integer l = 1;
  for (const auto& c : q) l = lcm(l, c.get_den());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : q) {
    out.push_back(c.get_num() * (l / c.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (out.back() < 0) g = -g;
  for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return out;
}

UPoly from_integers(const std::vector<Integer>& c) {
  UPoly p;
  for (const auto& v : c) p.emplace_back(v);
  trim(p);
  return p;
}

std::vector<std::complex<long double>> approximate_roots(const UPoly& p) {
  using C = std::complex<long double>;
  UPoly q = p;
  trim(q);
  int n = static_cast<int>(q.size()) - 1;
  if (n < 1) return {};
  std::vector<long double> a(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) a[i] = static_cast<long double>(q[i].get_d());
  long double lead = a.back();
  long double bound = 0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(a[i] / lead));
  bound = 1 + bound;
  auto eval = [&](C z, C& dp) {
    C v = 0;
    dp = 0;
    for (int i = n; i >= 0; --i) {
      dp = dp * z + v;
      v = v * z + a[i];
    }
    return v;
  };
  std::vector<C> z(n);
  long double r0 = std::min(bound, std::pow(std::abs(a[0] / lead), 1.0L / n) + 0.5L);
  if (r0 <= 0) r0 = 0.5L;
  for (int k = 0; k < n; ++k) {
    long double ang = 2 * M_PI * k / n + 0.4L;
    z[k] = C(r0 * std::cos(ang), r0 * std::sin(ang));
  }
  for (int it = 0; it < 2000; ++it) {
    long double move = 0;
    for (int k = 0; k < n; ++k) {
      C dp;
      C v = eval(z[k], dp);
      if (v == C(0)) continue;
      C ratio = v / dp;
      C s = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      C w = ratio / (1.0L - ratio * s);
      z[k] -= w;
      move = std::max(move, std::abs(w) / std::max(1.0L, std::abs(z[k])));
    }
    if (move < 1e-18L) break;
  }
  return z;
}

namespace {

// Squarefree factorization (Yun). Factors monic.
std::vector<std::pair<UPoly, unsigned>> yun(const UPoly& p) {
  std::vector<std::pair<UPoly, unsigned>> out;
  UPoly f = p;
  trim(f);
  Rational l = f.back();
  for (auto& c : f) c /= l;
  UPoly df = derivative(f);
  UPoly a = gcd(f, df);
  UPoly b = divmod(f, a).first;
  UPoly c = divmod(df, a).first;
  UPoly d = sub(c, derivative(b));
  unsigned i = 1;
  while (degree(b) > 0) {
    a = gcd(b, d);
    if (degree(a) > 0) out.emplace_back(a, i);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = sub(c, derivative(b));
    ++i;
  }
  return out;
}

bool near_integer(long double x, Integer& out) {
  long double r = std::round(x);
  if (std::abs(x - r) > 1e-6L * std::max(1.0L, std::abs(x))) return false;
  if (std::abs(r) > 1e17L) return false;
  out = Integer(static_cast<double>(r));
  return true;
}

// Splits a squarefree polynomial into irreducible monic factors.
void split_squarefree(UPoly p, std::vector<UPoly>& out) {
  using C = std::complex<long double>;
  while (degree(p) > 0) {
    int n = degree(p);
    if (n == 1) {
      Rational l = p.back();
      for (auto& c : p) c /= l;
      out.push_back(p);
      return;
    }
    if (n > 24) throw ResourceLimit("factor: degree too large for recombination");
    auto prim = primitive(p);
    long double lead = static_cast<long double>(prim.back().get_d());
    auto roots = approximate_roots(p);
    bool found = false;
    std::vector<int> idx;
    for (int k = 1; k <= n / 2 && !found; ++k) {
      idx.resize(k);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        std::vector<C> poly{C(1)};
        for (int i : idx) {
          std::vector<C> next(poly.size() + 1);
          for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j + 1] += poly[j];
            next[j] -= poly[j] * roots[i];
          }
          poly = std::move(next);
        }
        bool ok = true;
        UPoly cand;
        for (auto& c : poly) {
          Integer v;
          if (std::abs(c.imag()) * std::abs(lead) > 1e-6L * std::max(1.0L, std::abs(c.real() * lead)) ||
              !near_integer(c.real() * lead, v)) {
            ok = false;
            break;
          }
          cand.emplace_back(v, Integer(prim.back()));
        }
        if (ok) {
          for (auto& c : cand) c.canonicalize();
          auto [q, r] = divmod(p, cand);
          if (r.empty()) {
            split_squarefree(cand, out);
            p = q;
            found = true;
            break;
          }
        }
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    if (!found) {
      Rational l = p.back();
      for (auto& c : p) c /= l;
      out.push_back(p);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<UPoly, unsigned>> factor(const UPoly& p) {
  UPoly q = p;
  trim(q);
  if (q.empty()) throw InvalidArgument("factor of the zero polynomial");
  std::vector<std::pair<UPoly, unsigned>> out;
  for (const auto& [s, mult] : yun(q)) {
    std::vector<UPoly> parts;
    split_squarefree(s, parts);
    for (auto& f : parts) out.emplace_back(std::move(f), mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  return out;
}

}  // namespace upoly

namespace {

struct CInterval {
  Interval re, im;
};

CInterval operator-(const CInterval& a, const CInterval& b) { return {a.re - b.re, a.im - b.im}; }
CInterval operator*(const CInterval& a, const CInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Interval modulus(const CInterval& a) { return sqrt(pow(a.re, 2) + pow(a.im, 2)); }

}  // namespace

std::vector<RootDisc> isolate_roots(const UPoly& p) {
  UPoly q = p;
  upoly::trim(q);
  int n = upoly::degree(q);
  if (n < 1) return {};
  if (upoly::degree(upoly::gcd(q, upoly::derivative(q))) > 0)
    throw InvalidArgument("isolate_roots: polynomial is not squarefree");
  auto approx = upoly::approximate_roots(q);
  std::vector<CInterval> z(n);
  for (int i = 0; i < n; ++i)
    z[i] = {Interval(static_cast<double>(approx[i].real())), Interval(static_cast<double>(approx[i].imag()))};
  std::vector<Interval> coeff;
  for (const auto& c : q) coeff.push_back(from_rational(c));
  std::vector<RootDisc> out(n);
  for (int i = 0; i < n; ++i) {
    CInterval v{Interval(0.0), Interval(0.0)};
    for (int k = n; k >= 0; --k) {
      v = v * z[i];
      v.re += coeff[k];
    }
    Interval den = abs(coeff[n]);
    for (int j = 0; j < n; ++j)
      if (j != i) den *= modulus(z[i] - z[j]);
    if (den.lo() <= 0) throw PrecisionExhausted("root isolation: coincident approximations");
    Interval r = Interval(static_cast<double>(n)) * modulus(v) / den;
    out[i] = {z[i].re.lo(), z[i].im.lo(), r.hi()};
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Interval dist = modulus(z[i] - z[j]);
      if (dist.lo() <= round_up(out[i].radius + out[j].radius))
        throw PrecisionExhausted("root isolation: inclusion discs overlap");
    }
  return out;
}

AlgebraicNumber::AlgebraicNumber(const UPoly& minpoly, std::complex<double> approx) {
  auto prim = upoly::primitive(minpoly);
  if (prim.size() < 2) throw InvalidArgument("minimal polynomial must have degree at least 1");
  auto parts = upoly::factor(upoly::from_integers(prim));
  if (parts.size() != 1 || parts[0].second != 1)
    throw InvalidArgument("minimal polynomial is reducible over Q");
  minpoly_ = std::move(prim);
  auto discs = isolate_roots(upoly::from_integers(minpoly_));
  double best = INFINITY;
  for (const auto& d : discs) {
    double dist = std::hypot(d.re - approx.real(), d.im - approx.imag());
    if (dist < best) {
      best = dist;
      disc_ = d;
    }
  }
}

AlgebraicNumber AlgebraicNumber::rational(const Rational& q) {
  AlgebraicNumber a;
  a.minpoly_ = {-q.get_num(), q.get_den()};
  a.disc_ = {q.get_d(), 0.0, std::abs(q.get_d()) * 1e-15 + 1e-300};
  return a;
}

MultiPoly AlgebraicNumber::minpoly_poly(const std::string& var) const {
  return from_univariate(upoly::from_integers(minpoly_), var);
}

Interval mahler_log(const std::vector<Integer>& poly) {
  std::vector<Integer> p = poly;
  while (!p.empty() && p.back() == 0) p.pop_back();
  if (p.empty()) throw InvalidArgument("Mahler measure of zero");
  Integer lead = abs(p.back());
  if (p.size() == 1) return log_of(lead);
  if (p.size() == 2) {
    Integer a0 = abs(p[0]);
    return log_of(a0 > lead ? a0 : lead);
  }
  auto discs = isolate_roots(upoly::from_integers(p));
  Interval s = log_of(lead);
  for (const auto& d : discs) {
    Interval m = modulus(CInterval{Interval(d.re), Interval(d.im)});
    double lo = round_down(m.lo() - d.radius);
    double hi = round_up(m.hi() + d.radius);
    Interval l(lo <= 1 ? 0.0 : log(Interval(lo)).lo(), hi <= 1 ? 0.0 : log(Interval(hi)).hi());
    s += l;
  }
  return s;
}

Interval algebraic_height(const AlgebraicNumber& a, double tolerance) {
  Interval h = mahler_log(a.minpoly()) / Interval(static_cast<double>(a.degree()));
  if (h.lo() < 0) h = Interval(0.0, std::max(0.0, h.hi()));
  if (h.width() > tolerance) throw PrecisionExhausted("algebraic height: enclosure wider than tolerance");
  return h;
}

}  // namespace arithdyn
