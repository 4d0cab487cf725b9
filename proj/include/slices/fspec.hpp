#pragma once

// The function mini-language shared by the CLI and tests:
//   basic:d       product of d disjoint differences (x1-x2)...(x_{2d-1}-x_{2d})
//   gt:{b1,...}   the Gelfand-Tsetlin element chi_B
//   file:path     polynomial JSON from disk
//   dictator      x1
//   majority      1 when more than half the coordinates are 1 (n odd)
//   threshold:k   1 when at least k coordinates are 1

#include "slices/poly.hpp"

#include <string>

namespace slices {

// Builds the named function on n variables.  Throws std::invalid_argument
// on syntax errors or constraints (majority needs odd n, basic:d needs
// 2d <= n, ...); file errors surface as std::invalid_argument too.
MultilinearPoly parse_fspec(int n, const std::string& spec);

} // namespace slices
