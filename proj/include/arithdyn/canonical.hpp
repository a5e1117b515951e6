#ifndef ARITHDYN_CANONICAL_HPP
#define ARITHDYN_CANONICAL_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arithdyn/errors.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/interval.hpp"
#include "arithdyn/selfmap.hpp"

namespace arithdyn {

// Nullstellensatz identities sum_j G_ij F_j = R_i x_i^e with integer G_ij and
// positive integers R_i, where F_j are the map components scaled to a
// primitive integer tuple.
struct Cofactors {
  unsigned exponent = 0;
  std::vector<std::vector<MultiPoly>> g;  // g[i][j]
  std::vector<Integer> r;
};

class MorphismCertificate {
 public:
  // Checks the cofactor identities exactly and derives the constants.
  // Throws InvalidArgument when an identity fails.
  MorphismCertificate(const SelfMap& map, Cofactors cofactors);

  const SelfMap& map() const { return map_; }
  int degree() const { return map_.degree(); }
  const std::vector<MultiPoly>& integral_components() const { return integral_; }
  const Cofactors& cofactors() const { return cof_; }

  // d h(x) - c_minus <= h(f(x)) <= d h(x) + c_plus
  const Interval& c_plus() const { return c_plus_; }
  const Interval& c_minus() const { return c_minus_; }
  Interval constant() const { return max(c_plus_, c_minus_); }
  // log max_i S_i / R_i: the archimedean part of c_minus.
  const Interval& arch_loss() const { return arch_loss_; }
  // Primes p dividing lcm(R_i), with v_p(lcm).
  const std::vector<std::pair<Integer, unsigned>>& bad_primes() const { return bad_primes_; }

 private:
  SelfMap map_;
  std::vector<MultiPoly> integral_;
  Cofactors cof_;
  Interval c_plus_, c_minus_, arch_loss_;
  std::vector<std::pair<Integer, unsigned>> bad_primes_;
};

struct NotAMorphism {
  std::string reason;
};

struct MorphismBudget {
  std::size_t max_unknowns = 2500;
};

// Components scaled by one rational so that together they have integer
// coefficients with overall content 1.
std::vector<MultiPoly> primitive_components(const std::vector<MultiPoly>& comps);

std::variant<MorphismCertificate, NotAMorphism> certify_morphism(const SelfMap& f, const MorphismBudget& budget = {});

struct CanonicalHeightValue {
  Interval value;
  int depth = 0;
  int degree = 0;
  Interval c_plus, c_minus;
  double width() const { return value.width(); }
};

struct HeightBudget {
  int max_depth = 60;
  std::size_t exact_bits = 4096;  // exact orbit while coordinates stay below this
};

// Raised when the depth budget runs out before the requested width; carries
// the best enclosure reached.
class HeightBudgetExceeded : public ResourceLimit {
 public:
  HeightBudgetExceeded(const std::string& what, CanonicalHeightValue partial)
      : ResourceLimit(what, partial.depth), partial_(std::move(partial)) {}
  const CanonicalHeightValue& partial() const { return partial_; }

 private:
  CanonicalHeightValue partial_;
};

// Enclosure of lim h(f^n x)/d^n from depth n. Deterministic: the same inputs
// give bit-identical output.
CanonicalHeightValue canonical_height_at_depth(const MorphismCertificate& cert, const ProjPoint& x, int depth,
                                               const HeightBudget& budget = {});
CanonicalHeightValue canonical_height(const MorphismCertificate& cert, const ProjPoint& x, double target_width,
                                      const HeightBudget& budget = {});

struct PositivityProof {
  int depth = 0;
  ProjPoint iterate;   // f^depth(x)
  Interval height;     // h(f^depth x)
  Interval lower;      // lower bound for hat h(x)
};

// hat h(x) > 0 certified by h(f^n x)/d^n - c_minus/(d^n (d-1)) > 0, or
// nullopt after the budget (x may be preperiodic).
std::optional<PositivityProof> positive_canonical_height(const MorphismCertificate& cert, const ProjPoint& x,
                                                         int max_depth = 24);

struct ArithDegreeEstimate {
  Interval lower, upper;
  std::vector<std::pair<int, Interval>> samples;  // (n, h(f^n x))
  std::optional<Interval> last_ratio;             // h(f^n x)/h(f^(n-1) x)
  std::optional<int> exact;                       // alpha = d, when certified
};

class TruncatedOrbit : public Error {
 public:
  TruncatedOrbit(const std::string& what, std::vector<std::pair<int, Interval>> samples)
      : Error(what), samples_(std::move(samples)) {}
  const std::vector<std::pair<int, Interval>>& samples() const { return samples_; }

 private:
  std::vector<std::pair<int, Interval>> samples_;
};

// Growth-rate statistics of h_H = 1 + h along the orbit. With a certificate
// for a morphism and a positivity proof, alpha = d is reported exactly.
ArithDegreeEstimate alpha_estimate(const SelfMap& f, const ProjPoint& x, int n,
                                   const MorphismCertificate* cert = nullptr);

}  // namespace arithdyn

#endif
