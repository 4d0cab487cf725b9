#pragma once

// Dense exact-rational linear algebra, sized for the small systems that
// appear in oracles and Vandermonde work (dimension a few hundred at most).

#include "slices/rational.hpp"

#include <optional>
#include <vector>

namespace slices {

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

RatMatrix identity_matrix(std::size_t m);
RatMatrix matmul(const RatMatrix& a, const RatMatrix& b);
RatVector matvec(const RatMatrix& a, const RatVector& x);

std::size_t rank(RatMatrix a);

// Unique solution of a square system; nullopt when the matrix is singular.
std::optional<RatVector> solve(RatMatrix a, RatVector b);

// Throws std::invalid_argument on a singular matrix.
RatMatrix invert(const RatMatrix& a);

} // namespace slices
