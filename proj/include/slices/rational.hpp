#pragma once

// Exact rational scalar used throughout the library. GMP's mpq_class does the
// heavy lifting; this header adds the canonical "num/den" string form shared
// by the serializers and the CLI.

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace slices {

using Rational = mpq_class;
using Integer = mpz_class;

// Construct a canonical rational from machine integers. Throws on zero denominator.
Rational rat(long num, long den = 1);

// Parse "num" or "num/den" with optional sign. Throws std::invalid_argument on
// malformed input or zero denominator.
Rational parse_rational(const std::string& text);

// Canonical form "num/den", denominator always present and positive.
std::string format_rational(const Rational& q);

double to_double(const Rational& q);

// q^e for e >= 0 (0^0 = 1).
Rational pow_rational(const Rational& q, unsigned e);

// If q is the square of a rational, store the nonnegative root and return true.
bool rational_sqrt(const Rational& q, Rational& root);

} // namespace slices
