#ifndef ARITHDYN_INTERVAL_HPP
#define ARITHDYN_INTERVAL_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <limits>
#include <optional>

namespace arithdyn {

// Closed interval [lo, hi] of reals with outward rounding. Every operation
// computes in round-to-nearest and then widens each endpoint by one ulp
// (two for transcendental functions), so the result always contains the
// exact value. Endpoints may be infinite.
class Interval {
 public:
  constexpr Interval() = default;
  explicit Interval(double point);
  Interval(double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const;
  // Upper bound on hi - lo.
  double width() const;

  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }
  bool intersects(const Interval& other) const {
    return lo_ <= other.hi_ && other.lo_ <= hi_;
  }
  bool is_positive() const { return lo_ > 0; }
  bool is_finite() const;

  Interval operator-() const { return Interval(-hi_, -lo_); }
  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const Interval& x);

double round_down(double x);
double round_up(double x);

Interval hull(const Interval& a, const Interval& b);
std::optional<Interval> intersection(const Interval& a, const Interval& b);

Interval abs(const Interval& x);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);
// log of the interval; a non-positive lower end gives -inf.
Interval log(const Interval& x);
Interval exp(const Interval& x);
Interval sqrt(const Interval& x);
Interval pow(const Interval& x, int n);

Interval ln2();
Interval from_integer(const mpz_class& z);
Interval from_rational(const mpq_class& q);

// Enclosure of log(z) for z > 0 (hardware path, a few ulps wide).
Interval log_of(const mpz_class& z);
Interval log_of(const mpq_class& q);
// Same, but if the hardware enclosure is wider than `tolerance` the bounds
// are recomputed with MPFR at 256 bits and rounded outward to doubles.
Interval log_of(const mpq_class& q, double tolerance);

// The exact rational value of a finite double.
mpq_class exact_value(double x);

}  // namespace arithdyn

#endif
