#include "arithdyn/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <ostream>

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down2(double x) { return round_down(round_down(x)); }

// Sum and product with an outward step only when the rounded result is
// inexact. The residuals come from error-free transforms, which are exact
// away from the subnormal range.
constexpr double kTiny = 1e-290;

double sum_residual(double a, double b, double s) {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}
double add_down(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s;
  return sum_residual(a, b, s) < 0 ? round_down(s) : s;
}
double add_up(double a, double b) {
  double s = a + b;
  if (!std::isfinite(s)) return s;
  return sum_residual(a, b, s) > 0 ? round_up(s) : s;
}
double mul_down(double a, double b) {
  double p = a * b;
  if (!std::isfinite(p)) return p;
  if (std::abs(p) < kTiny) return round_down(p);
  return std::fma(a, b, -p) < 0 ? round_down(p) : p;
}
double mul_up(double a, double b) {
  double p = a * b;
  if (!std::isfinite(p)) return p;
  if (std::abs(p) < kTiny) return round_up(p);
  return std::fma(a, b, -p) > 0 ? round_up(p) : p;
}
double up2(double x) { return round_up(round_up(x)); }

}  // namespace

double round_down(double x) {
  if (std::isinf(x) || std::isnan(x)) return x;
  return std::nextafter(x, -kInf);
}

double round_up(double x) {
  if (std::isinf(x) || std::isnan(x)) return x;
  return std::nextafter(x, kInf);
}

Interval::Interval(double point) : lo_(point), hi_(point) {
  if (std::isnan(point)) throw InvalidArgument("interval endpoint is NaN");
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi)
    throw InvalidArgument("malformed interval");
}

double Interval::mid() const {
  if (!is_finite()) return std::isinf(lo_) ? (std::isinf(hi_) ? 0.0 : hi_) : lo_;
  return lo_ + (hi_ - lo_) / 2;
}

double Interval::width() const { return add_up(hi_, -lo_); }

bool Interval::is_finite() const { return std::isfinite(lo_) && std::isfinite(hi_); }

Interval& Interval::operator+=(const Interval& o) {
  lo_ = add_down(lo_, o.lo_);
  hi_ = add_up(hi_, o.hi_);
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  double lo = add_down(lo_, -o.hi_);
  double hi = add_up(hi_, -o.lo_);
  lo_ = lo;
  hi_ = hi;
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  // 0 * inf is treated as 0, which is the right limit for enclosures of
  // finite quantities.
  auto lo = [](double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : mul_down(a, b); };
  auto hi = [](double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : mul_up(a, b); };
  double l = std::min({lo(lo_, o.lo_), lo(lo_, o.hi_), lo(hi_, o.lo_), lo(hi_, o.hi_)});
  double h = std::max({hi(lo_, o.lo_), hi(lo_, o.hi_), hi(hi_, o.lo_), hi(hi_, o.hi_)});
  lo_ = l;
  hi_ = h;
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  if (o.lo_ <= 0.0 && o.hi_ >= 0.0) {
    lo_ = -kInf;
    hi_ = kInf;
    return *this;
  }
  // q = a / b is exact when fma(q, b, -a) == 0; otherwise step outward.
  auto quot = [](double a, double b, bool up) {
    if (a == 0.0) return 0.0;
    double q = a / b;
    if (std::isnan(q)) return 0.0;
    if (!std::isfinite(q)) return q;
    if (std::abs(q) >= kTiny && std::fma(q, b, -a) == 0.0) return q;
    return up ? round_up(q) : round_down(q);
  };
  double l = std::min({quot(lo_, o.lo_, false), quot(lo_, o.hi_, false), quot(hi_, o.lo_, false), quot(hi_, o.hi_, false)});
  double h = std::max({quot(lo_, o.lo_, true), quot(lo_, o.hi_, true), quot(hi_, o.lo_, true), quot(hi_, o.hi_, true)});
  lo_ = l;
  hi_ = h;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  auto flags = os.flags();
  auto prec = os.precision(17);
  os << '[' << x.lo() << ", " << x.hi() << ']';
  os.precision(prec);
  os.flags(flags);
  return os;
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

std::optional<Interval> intersection(const Interval& a, const Interval& b) {
  if (!a.intersects(b)) return std::nullopt;
  return Interval(std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

Interval abs(const Interval& x) {
  if (x.lo() >= 0) return x;
  if (x.hi() <= 0) return -x;
  return Interval(0.0, std::max(-x.lo(), x.hi()));
}

Interval max(const Interval& a, const Interval& b) {
  return Interval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval min(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

Interval log(const Interval& x) {
  if (x.hi() <= 0) throw InvalidArgument("log of a non-positive interval");
  double lo = x.lo() <= 0 ? -kInf : (x.lo() == 1.0 ? 0.0 : down2(std::log(x.lo())));
  double hi = x.hi() == 1.0 ? 0.0 : up2(std::log(x.hi()));
  return Interval(lo, hi);
}

Interval exp(const Interval& x) {
  double lo = std::max(0.0, down2(std::exp(x.lo())));
  return Interval(lo, up2(std::exp(x.hi())));
}

Interval sqrt(const Interval& x) {
  if (x.hi() < 0) throw InvalidArgument("sqrt of a negative interval");
  double lo = x.lo() <= 0 ? 0.0 : std::max(0.0, round_down(std::sqrt(x.lo())));
  return Interval(lo, round_up(std::sqrt(x.hi())));
}

Interval pow(const Interval& x, int n) {
  if (n < 0) return Interval(1.0) / pow(x, -n);
  Interval result(1.0);
  Interval base = x;
  // Even powers of a sign-changing interval are non-negative.
  if (n % 2 == 0) base = abs(x);
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

Interval ln2() {
  static const Interval value = [] {
    mpfr_t t;
    mpfr_init2(t, 128);
    mpfr_const_log2(t, MPFR_RNDD);
    double lo = mpfr_get_d(t, MPFR_RNDD);
    mpfr_const_log2(t, MPFR_RNDU);
    double hi = mpfr_get_d(t, MPFR_RNDU);
    mpfr_clear(t);
    return Interval(lo, hi);
  }();
  return value;
}

Interval from_integer(const mpz_class& z) {
  if (mpz_sizeinbase(z.get_mpz_t(), 2) <= 53) return Interval(z.get_d());
  double v = z.get_d();  // truncated toward zero
  return Interval(round_down(v), round_up(v));
}

Interval from_rational(const mpq_class& q) {
  if (q.get_den() == 1) return from_integer(q.get_num());
  double v = q.get_d();
  return Interval(round_down(v), round_up(v));
}

Interval log_of(const mpz_class& z) {
  if (sgn(z) <= 0) throw InvalidArgument("log of a non-positive integer");
  if (mpz_sizeinbase(z.get_mpz_t(), 2) <= 53) return log(Interval(z.get_d()));
  long exp2 = 0;
  double m = mpz_get_d_2exp(&exp2, z.get_mpz_t());  // z in [m, m + 2^-53) * 2^exp
  Interval mant(m, round_up(m));
  return log(mant) + Interval(static_cast<double>(exp2)) * ln2();
}

Interval log_of(const mpq_class& q) {
  if (sgn(q) <= 0) throw InvalidArgument("log of a non-positive rational");
  if (q.get_den() == 1) return log_of(q.get_num());
  return log_of(q.get_num()) - log_of(q.get_den());
}

Interval log_of(const mpq_class& q, double tolerance) {
  Interval fast = log_of(q);
  if (fast.width() <= tolerance) return fast;
  mpfr_t x;
  mpfr_init2(x, 256);
  mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDD);
  mpfr_log(x, x, MPFR_RNDD);
  double lo = mpfr_get_d(x, MPFR_RNDD);
  mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDU);
  mpfr_log(x, x, MPFR_RNDU);
  double hi = mpfr_get_d(x, MPFR_RNDU);
  mpfr_clear(x);
  return Interval(lo, hi);
}

mpq_class exact_value(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("exact value of a non-finite double");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

}  // namespace arithdyn
