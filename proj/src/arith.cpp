#include "arithdyn/arith.hpp"

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>

#include "arithdyn/errors.hpp"

namespace arithdyn {

long Valuation::value() const {
  if (infinite_) throw InvalidArgument("valuation of zero is +infinity");
  return value_;
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  return a.value_ <=> b.value_;
}

Valuation operator+(const Valuation& a, const Valuation& b) {
  if (a.infinite_ || b.infinite_) return Valuation::infinity();
  return Valuation::finite(a.value_ + b.value_);
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  if (v.is_infinite()) return os << "+inf";
  return os << v.value();
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Integer pollard_rho(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](Integer& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (d == 1) {
      step(x);
      step(y);
      step(y);
      Integer diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Integer next_prime(const Integer& n) {
  Integer c = n < 2 ? Integer(2) : Integer(n + 1);
  while (!is_prime(c)) ++c;
  return c;
}

Valuation valuation(const Integer& n, const Integer& p) {
  if (!is_prime(p)) throw InvalidArgument("valuation: " + p.get_str() + " is not prime");
  if (n == 0) return Valuation::infinity();
  Integer rest = n;
  long v = static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
  return Valuation::finite(v);
}

Valuation valuation(const Rational& q, const Integer& p) {
  if (!is_prime(p)) throw InvalidArgument("valuation: " + p.get_str() + " is not prime");
  if (q == 0) return Valuation::infinity();
  return Valuation::finite(valuation(q.get_num(), p).value() - valuation(q.get_den(), p).value());
}

std::vector<std::pair<Integer, unsigned>> factor(const Integer& n) {
  if (n == 0) throw InvalidArgument("factor: zero");
  Integer m = abs(n);
  std::vector<std::pair<Integer, unsigned>> result;
  for (unsigned long p = 2; p < 10000 && m > 1; ++p) {
    if (p * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        m /= p;
        ++e;
      }
      result.emplace_back(Integer(p), e);
    }
  }
  if (m > 1) {
    std::vector<Integer> rest;
    factor_into(m, rest);
    std::sort(rest.begin(), rest.end());
    for (const auto& q : rest) {
      if (!result.empty() && result.back().first == q)
        ++result.back().second;
      else
        result.emplace_back(q, 1);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer pow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw InvalidArgument("zero to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  Rational r(pow(base.get_num(), static_cast<unsigned long>(exponent)),
             pow(base.get_den(), static_cast<unsigned long>(exponent)));
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0 || q.get_den() == 0)
    throw InvalidArgument("not a rational literal: '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

}  // namespace arithdyn
