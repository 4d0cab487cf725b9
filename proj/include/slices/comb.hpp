#pragma once

// Exact counting helpers: binomial coefficients, falling powers, and the
// binomial distribution with rational success probability.

#include "slices/rational.hpp"

#include <vector>

namespace slices {

// C(n, k); zero when k < 0 or k > n. Exact big integer.
Integer binomial(long n, long k);

// x^(d falling) = x (x-1) ... (x-d+1); d = 0 gives 1.
Integer falling(long x, int d);

// Falling-power ratio a^(d falling) / b^(d falling) as an exact rational.
// Throws if the denominator vanishes (b < d while numerator does not cancel it).
Rational falling_ratio(long a, long b, int d);

// Pr[Bin(n, p) = s], exact.
Rational binomial_pmf(int n, const Rational& p, int s);

// Pr[|Bin(n, p) - pn| > eps * n], exact two-sided tail.
Rational binomial_tail_outside(int n, const Rational& p, const Rational& eps);

} // namespace slices
