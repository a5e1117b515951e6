#ifndef ARITHDYN_ARITH_HPP
#define ARITHDYN_ARITH_HPP

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace arithdyn {

using Integer = mpz_class;
using Rational = mpq_class;

// p-adic valuation with a distinct +infinity for v_p(0). value() on the
// infinite valuation throws; callers that may see zero must check first.
class Valuation {
 public:
  static Valuation infinity() { return Valuation(true, 0); }
  static Valuation finite(long v) { return Valuation(false, v); }

  bool is_infinite() const { return infinite_; }
  long value() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);
  friend Valuation operator+(const Valuation& a, const Valuation& b);

 private:
  Valuation(bool infinite, long v) : infinite_(infinite), value_(v) {}
  bool infinite_;
  long value_;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

bool is_prime(const Integer& n);
Integer next_prime(const Integer& n);  // least prime > n

Valuation valuation(const Integer& n, const Integer& p);
Valuation valuation(const Rational& q, const Integer& p);

// Prime factorization of |n| (n != 0), primes ascending. Trial division
// followed by Pollard rho on what remains.
std::vector<std::pair<Integer, unsigned>> factor(const Integer& n);

Integer lcm(const Integer& a, const Integer& b);
Integer pow(const Integer& base, unsigned long exponent);
Rational pow(const Rational& base, long exponent);

// Parses "a" or "a/b" (optionally signed); throws InvalidArgument.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

}  // namespace arithdyn

#endif
