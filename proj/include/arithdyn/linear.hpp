#ifndef ARITHDYN_LINEAR_HPP
#define ARITHDYN_LINEAR_HPP

#include <optional>
#include <vector>

#include "arithdyn/arith.hpp"

namespace arithdyn {

using Matrix = std::vector<std::vector<Rational>>;

// One exact solution of A x = b, or nullopt when the system is inconsistent.
// Free variables are set to zero. The returned vector is checked against A
// before it is handed back. Throws InvalidArgument on ragged A or when
// b.size() differs from the row count.
std::optional<std::vector<Rational>> exact_linear_solve(const Matrix& a, const std::vector<Rational>& b);

// Determinant of a square matrix by exact Gaussian elimination.
Rational determinant(Matrix a);

}  // namespace arithdyn

#endif
