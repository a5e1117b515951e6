#ifndef ARITHDYN_HEIGHTS_HPP
#define ARITHDYN_HEIGHTS_HPP

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arithdyn/arith.hpp"
#include "arithdyn/interval.hpp"

namespace arithdyn {

// Point of P^N(Q) stored as coprime integers with the first nonzero
// coordinate positive.
class ProjPoint {
 public:
  ProjPoint() = default;
  explicit ProjPoint(std::vector<Integer> coords);
  static ProjPoint from_rationals(const std::vector<Rational>& coords);

  std::size_t dim() const { return coords_.size() - 1; }
  std::size_t size() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Integer>& coords() const { return coords_; }
  // max |x_i|, the multiplicative height.
  Integer height_mult() const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b);

  std::string to_string() const;

 private:
  std::vector<Integer> coords_;
};

std::ostream& operator<<(std::ostream& os, const ProjPoint& p);

class AffPoint {
 public:
  AffPoint() = default;
  explicit AffPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {}

  std::size_t dim() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }
  // [x_1 : ... : x_N : 1]
  ProjPoint to_projective() const;

  friend bool operator==(const AffPoint&, const AffPoint&) = default;
  std::string to_string() const;

 private:
  std::vector<Rational> coords_;
};

std::ostream& operator<<(std::ostream& os, const AffPoint& p);

// log max |x_i| of the canonical representative.
Interval weil_height(const ProjPoint& x);
// log max(|num|, |den|).
Interval weil_height(const Rational& q);

// A place of Q: a prime or the archimedean place.
class Place {
 public:
  static Place infinity() { return Place(Integer(0)); }
  static Place prime(const Integer& p);
  bool is_infinite() const { return p_ == 0; }
  const Integer& p() const { return p_; }

 private:
  explicit Place(Integer p) : p_(std::move(p)) {}
  Integer p_;
};

// Finite places give multiple * log p exactly; the archimedean place gives an
// enclosure only.
struct LocalHeight {
  bool archimedean = false;
  Integer prime;
  long multiple = 0;
  Interval value;
};

LocalHeight local_height(const AffPoint& x, const Place& v);

// Points of P^N(Q) with multiplicative height < T, ordered by height and then
// lexicographically on canonical coordinates.
class NorthcottStream {
 public:
  NorthcottStream(std::size_t n, const Integer& bound, const Integer& start_height = 1);
  std::optional<ProjPoint> next();

 private:
  bool advance();
  std::size_t n_;
  Integer bound_;
  Integer h_;
  std::vector<Integer> cur_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<ProjPoint> northcott_enumerate(std::size_t n, const Integer& bound);

// Stream of the window { a : lo <= h(a) < hi } with h the logarithmic height.
class HeightWindow {
 public:
  HeightWindow(std::size_t n, double lo, double hi);
  std::optional<ProjPoint> next();

 private:
  NorthcottStream stream_;
  double lo_, hi_;
};

struct SchanuelCount {
  Integer count;
  double ratio;  // count / T^(N+1)
};

SchanuelCount schanuel_ratio(std::size_t n, const Integer& bound);

}  // namespace arithdyn

#endif
