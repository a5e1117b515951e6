#include "arithdyn/heights.hpp"

#include <mpfr.h>

#include <algorithm>
#include <ostream>
#include <sstream>

#include "arithdyn/errors.hpp"

namespace arithdyn {

ProjPoint::ProjPoint(std::vector<Integer> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidArgument("projective point needs at least one coordinate");
  Integer g = 0;
  for (const auto& c : coords_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) throw InvalidArgument("projective point with all coordinates zero");
  auto first = std::find_if(coords_.begin(), coords_.end(), [](const Integer& c) { return c != 0; });
  if (*first < 0) g = -g;
  if (g != 1)
    for (auto& c : coords_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

ProjPoint ProjPoint::from_rationals(const std::vector<Rational>& coords) {
  Integer l = 1;
  for (const auto& q : coords) l = lcm(l, q.get_den());
  std::vector<Integer> v;
  v.reserve(coords.size());
  for (const auto& q : coords) v.push_back(q.get_num() * (l / q.get_den()));
  return ProjPoint(std::move(v));
}

Integer ProjPoint::height_mult() const {
  Integer m = 0;
  for (const auto& c : coords_)
    if (abs(c) > m) m = abs(c);
  return m;
}

std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
  if (a.coords_.size() != b.coords_.size()) return a.coords_.size() <=> b.coords_.size();
  for (std::size_t i = 0; i < a.coords_.size(); ++i) {
    int c = cmp(a.coords_[i], b.coords_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string ProjPoint::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ':';
    s += coords_[i].get_str();
  }
  return s + "]";
}

std::ostream& operator<<(std::ostream& os, const ProjPoint& p) { return os << p.to_string(); }

ProjPoint AffPoint::to_projective() const {
  std::vector<Rational> c = coords_;
  c.emplace_back(1);
  return ProjPoint::from_rationals(c);
}

std::string AffPoint::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ", ";
    s += coords_[i].get_str();
  }
  return s + ")";
}

std::ostream& operator<<(std::ostream& os, const AffPoint& p) { return os << p.to_string(); }

Interval weil_height(const ProjPoint& x) { return log_of(x.height_mult()); }

Interval weil_height(const Rational& q) {
  const Integer& n = q.get_num();
  const Integer& d = q.get_den();
  return log_of(abs(n) > d ? Integer(abs(n)) : d);
}

Place Place::prime(const Integer& p) {
  if (!is_prime(p)) throw InvalidArgument("place: " + p.get_str() + " is not prime");
  return Place(p);
}

LocalHeight local_height(const AffPoint& x, const Place& v) {
  LocalHeight out;
  if (v.is_infinite()) {
    out.archimedean = true;
    Rational m = 1;
    for (const auto& c : x.coords())
      if (abs(c) > m) m = abs(c);
    out.value = log_of(m);
    return out;
  }
  out.prime = v.p();
  long m = 0;
  for (const auto& c : x.coords()) {
    if (c == 0) continue;
    m = std::max(m, -valuation(c, v.p()).value());
  }
  out.multiple = m;
  out.value = Interval(static_cast<double>(m)) * log_of(Integer(v.p()));
  return out;
}

NorthcottStream::NorthcottStream(std::size_t n, const Integer& bound, const Integer& start_height)
    : n_(n), bound_(bound), h_(start_height < 1 ? Integer(1) : start_height), cur_(n + 1) {
  if (n == 0) throw InvalidArgument("northcott: dimension must be positive");
}

// Lexicographic odometer over [-H, H]^(N+1) within the current height.
bool NorthcottStream::advance() {
  if (!started_) {
    started_ = true;
    if (h_ >= bound_) return false;
    std::fill(cur_.begin(), cur_.end(), Integer(-h_));
    return true;
  }
  for (std::size_t i = cur_.size(); i-- > 0;) {
    if (cur_[i] < h_) {
      ++cur_[i];
      return true;
    }
    cur_[i] = -h_;
  }
  ++h_;
  if (h_ >= bound_) return false;
  std::fill(cur_.begin(), cur_.end(), Integer(-h_));
  return true;
}

std::optional<ProjPoint> NorthcottStream::next() {
  while (!done_) {
    if (!advance()) {
      done_ = true;
      break;
    }
    auto first = std::find_if(cur_.begin(), cur_.end(), [](const Integer& c) { return c != 0; });
    if (first == cur_.end() || *first < 0) continue;
    bool at_height = false;
    Integer g = 0;
    for (const auto& c : cur_) {
      if (abs(c) == h_) at_height = true;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (at_height && g == 1) return ProjPoint(cur_);
  }
  return std::nullopt;
}

std::vector<ProjPoint> northcott_enumerate(std::size_t n, const Integer& bound) {
  std::vector<ProjPoint> out;
  NorthcottStream s(n, bound);
  while (auto p = s.next()) out.push_back(std::move(*p));
  return out;
}

namespace {

// Least integer H with log H >= t.
Integer ceil_exp(double t) {
  if (t <= 0) return 1;
  mpfr_t x;
  mpfr_init2(x, 256);
  mpfr_set_d(x, t, MPFR_RNDN);
  mpfr_exp(x, x, MPFR_RNDU);
  mpfr_ceil(x, x);
  Integer r;
  mpfr_get_z(r.get_mpz_t(), x, MPFR_RNDU);
  mpfr_clear(x);
  return r;
}

}  // namespace

HeightWindow::HeightWindow(std::size_t n, double lo, double hi)
    : stream_(n, ceil_exp(hi), ceil_exp(lo)), lo_(lo), hi_(hi) {
  if (!(lo <= hi)) throw InvalidArgument("height window: lower end above upper end");
}

std::optional<ProjPoint> HeightWindow::next() { return stream_.next(); }

SchanuelCount schanuel_ratio(std::size_t n, const Integer& bound) {
  if (bound < 2) throw InvalidArgument("schanuel: bound must be at least 2");
  if (!bound.fits_ulong_p() || bound > 100000000) throw ResourceLimit("schanuel: bound too large");
  unsigned long m = bound.get_ui() - 1;
  // Moebius function by a linear sieve.
  std::vector<int> mu(m + 1, 1);
  std::vector<char> composite(m + 1, 0);
  std::vector<unsigned long> primes;
  for (unsigned long i = 2; i <= m; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (unsigned long p : primes) {
      if (i * p > m) break;
      composite[i * p] = 1;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = -mu[i];
    }
  }
  // Primitive vectors in [-m, m]^(N+1), each point counted twice (sign).
  Integer total = 0;
  for (unsigned long k = 1; k <= m; ++k) {
    if (mu[k] == 0) continue;
    Integer side = 2 * (m / k) + 1;
    Integer v = pow(side, n + 1) - 1;
    total += mu[k] * v;
  }
  SchanuelCount out;
  out.count = total / 2;
  Rational r(out.count, pow(bound, n + 1));
  r.canonicalize();
  out.ratio = r.get_d();
  return out;
}

}  // namespace arithdyn
