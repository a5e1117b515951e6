#ifndef ARITHDYN_SELFMAP_HPP
#define ARITHDYN_SELFMAP_HPP

#include <optional>
#include <string>
#include <vector>

#include "arithdyn/heights.hpp"
#include "arithdyn/multipoly.hpp"

namespace arithdyn {

enum class Ambient { Projective, Affine };

// Self-map of P^N or A^N. Projective components are homogeneous of a common
// degree with their common factor divided out; the factor that was removed is
// kept so callers can tell that the presentation they supplied had a base
// locus of positive dimension. Affine maps keep both the affine components and
// their homogenization [F_1^h : ... : F_N^h : W^d].
class SelfMap {
 public:
  SelfMap() = default;  // empty placeholder; use the factories
  static SelfMap projective(std::vector<MultiPoly> components);
  static SelfMap affine(std::vector<MultiPoly> components, const std::string& hom_var = "W");

  Ambient ambient() const { return ambient_; }
  bool is_projective() const { return ambient_ == Ambient::Projective; }
  std::size_t dim() const { return dim_; }
  int degree() const { return degree_; }

  // Affine components (affine maps only).
  const std::vector<MultiPoly>& affine_components() const { return affine_; }
  // Homogeneous components in N+1 variables (both kinds).
  const std::vector<MultiPoly>& components() const { return hom_; }
  const MultiPoly& removed_factor() const { return removed_; }
  const std::vector<std::string>& variables() const;

  // nullopt when every component vanishes at x.
  std::optional<ProjPoint> evaluate(const ProjPoint& x) const;
  AffPoint evaluate(const AffPoint& x) const;

  std::string to_string() const;

 private:
  Ambient ambient_ = Ambient::Projective;
  std::size_t dim_ = 0;
  int degree_ = 0;
  std::vector<MultiPoly> affine_;
  std::vector<MultiPoly> hom_;
  std::vector<std::vector<std::pair<Monomial, Integer>>> integral_;  // scaled hom_
  MultiPoly removed_;
};

// Common factor of the components, normalized; 1 when coprime.
MultiPoly common_factor(const std::vector<MultiPoly>& components);

}  // namespace arithdyn

#endif
