#ifndef ARITHDYN_DYNAMICS_HPP
#define ARITHDYN_DYNAMICS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "arithdyn/heights.hpp"
#include "arithdyn/interval.hpp"
#include "arithdyn/selfmap.hpp"

namespace arithdyn {

struct Orbit {
  std::vector<ProjPoint> points;  // x, f(x), ...
  bool truncated = false;         // an iterate hit the indeterminacy locus
};

Orbit orbit(const SelfMap& f, const ProjPoint& x, std::size_t n);
std::vector<AffPoint> orbit(const SelfMap& f, const AffPoint& x, std::size_t n);

// f o g, with the common factor of the components removed.
SelfMap compose(const SelfMap& f, const SelfMap& g);
// f^n for n >= 1.
SelfMap iterate(const SelfMap& f, std::size_t n);

// d_k = deg f^k for k = 1..n. Checks d_{m+n} <= d_m d_n on construction.
class DegreeSequence {
 public:
  explicit DegreeSequence(std::vector<long> degrees);
  const std::vector<long>& degrees() const { return degrees_; }
  long operator[](std::size_t k) const { return degrees_.at(k - 1); }  // 1-based
  std::size_t size() const { return degrees_.size(); }

 private:
  std::vector<long> degrees_;
};

struct DegreeBudget {
  std::size_t max_terms = 4'000'000;  // per component
};

// Throws ResourceLimit carrying the largest k finished when the iterates grow
// past the budget.
DegreeSequence degree_sequence(const SelfMap& f, std::size_t n, const DegreeBudget& budget = {});

struct DeltaEstimate {
  Interval upper;      // min_k d_k^(1/k), a rigorous upper bound for delta
  Interval heuristic;  // d_n / d_(n-1), not rigorous
  DegreeSequence sequence;
};

DeltaEstimate delta_estimate(const SelfMap& f, std::size_t n, const DegreeBudget& budget = {});
DeltaEstimate delta_estimate(const DegreeSequence& seq);

struct StabilityReport {
  bool stable = true;
  std::optional<std::size_t> first_drop;
};

StabilityReport is_stable_upto(const SelfMap& f, std::size_t n, const DegreeBudget& budget = {});
StabilityReport stability(const DegreeSequence& seq);

}  // namespace arithdyn

#endif
