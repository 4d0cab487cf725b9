#pragma once

// Shared helpers for the test binaries: small random rationals, random
// polynomials, and slice iteration.

#include "slices/harmonic.hpp"
#include "slices/poly.hpp"
#include "slices/rng.hpp"

#include <functional>
#include <vector>

namespace slices::testing {

inline Rational random_rational(Rng& rng) {
    long num = static_cast<long>(rng.below(41)) - 20;
    long den = static_cast<long>(rng.below(9)) + 1;
    return rat(num, den);
}

inline Rational random_nonzero_rational(Rng& rng) {
    for (;;) {
        Rational q = random_rational(rng);
        if (q != 0) return q;
    }
}

inline MultilinearPoly random_poly(int n, int max_degree, int terms, Rng& rng) {
    MultilinearPoly f(n);
    for (int t = 0; t < terms; ++t) {
        int d = static_cast<int>(rng.below(max_degree + 1));
        Mask vars = 0;
        while (popcount(vars) < d)
            vars |= Mask(1) << rng.below(n);
        f.add_term(vars, random_rational(rng));
    }
    return f;
}

// Random harmonic polynomial assembled from Gelfand-Tsetlin elements, so it
// does not depend on any projection routine under test.
inline MultilinearPoly random_harmonic(int n, int max_degree, Rng& rng) {
    MultilinearPoly f(n);
    for (int d = 0; d <= max_degree; ++d) {
        auto sets = gt_admissible_sets(n, d);
        const auto& basis = gt_basis(n, d);
        int picks = d == 0 ? 1 : 2;
        for (int t = 0; t < picks; ++t) {
            std::size_t which = rng.below(sets.size());
            f = f + random_rational(rng) * basis[which];
        }
    }
    return f;
}

inline void for_each_slice_mask(int n, int k,
                                const std::function<void(Mask)>& fn) {
    if (k == 0) {
        fn(0);
        return;
    }
    Mask x = (Mask(1) << k) - 1;
    Mask limit = Mask(1) << n;
    while (x < limit) {
        fn(x);
        Mask c = x & (~x + 1);
        Mask r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
}

} // namespace slices::testing
