#pragma once

// JSON encodings for the core value types.  Polynomials use
// {"n": n, "terms": [{"vars": [i,...], "num": ..., "den": ...}]} with
// 1-based sorted variable lists and terms in canonical order; num/den are
// JSON integers when they fit in 64 bits and decimal strings otherwise,
// so round trips are bit-exact at any precision.

#include "slices/pmf.hpp"
#include "slices/poly.hpp"
#include "slices/rational.hpp"

#include <nlohmann/json.hpp>

namespace slices {

using Json = nlohmann::ordered_json;

Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j);

// "num/den" string form used wherever a rational appears as a scalar field.
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json poly_to_json(const MultilinearPoly& f);
MultilinearPoly poly_from_json(const Json& j);

// {"support": [...], "probs": [...]}; rational pmfs use "num/den" strings,
// float pmfs plain numbers.
Json pmf_to_json(const RatPmf& pmf);
Json pmf_to_json(const Pmf& pmf);
RatPmf rat_pmf_from_json(const Json& j);

} // namespace slices
