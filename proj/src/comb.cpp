#include "slices/comb.hpp"

#include <stdexcept>

namespace slices {

Integer binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return out;
}

Integer falling(long x, int d) {
    Integer out = 1;
    for (int i = 0; i < d; ++i) out *= Integer(x - i);
    return out;
}

Rational falling_ratio(long a, long b, int d) {
    Integer den = falling(b, d);
    if (den == 0) throw std::invalid_argument("falling_ratio: zero denominator");
    Rational out(falling(a, d), den);
    out.canonicalize();
    return out;
}

Rational binomial_pmf(int n, const Rational& p, int s) {
    if (s < 0 || s > n) return 0;
    Rational q = Rational(1) - p;
    return Rational(binomial(n, s)) * pow_rational(p, static_cast<unsigned>(s)) *
           pow_rational(q, static_cast<unsigned>(n - s));
}

Rational binomial_tail_outside(int n, const Rational& p, const Rational& eps) {
    Rational total = 0;
    Rational mean = Rational(n) * p;
    Rational band = eps * Rational(n);
    for (int s = 0; s <= n; ++s) {
        Rational dev = Rational(s) - mean;
        if (dev < 0) dev = -dev;
        if (dev > band) total += binomial_pmf(n, p, s);
    }
    return total;
}

} // namespace slices
