#pragma once

// Blekherman expansions f = sum f_i * S^i with harmonic coefficients
// (S = x_1 + ... + x_n), slice restrictions, Turner's exact Vandermonde
// inverse, and (eta, M)-system statistics for coefficient interpolation.

#include "slices/linalg.hpp"
#include "slices/poly.hpp"
#include "slices/rational.hpp"

#include <vector>

namespace slices {

enum class BlekhermanBasis { RawSum, Standardized };

struct BlekhermanExpansion {
    int n = 0;
    int d = 0;                  // degree of the source polynomial
    BlekhermanBasis basis = BlekhermanBasis::RawSum;
    Rational p;                 // Standardized only: the reference bias
    // Standardized only: true when np(1-p) is a perfect rational square, in
    // which case sigma_scale = sqrt(np(1-p)) exactly and coeffs are stored
    // against powers of (S - np)/sigma_scale.  Otherwise coeffs stay in the
    // RawSum basis and the affine change of variable happens at restriction
    // time, keeping every stored quantity rational.
    bool sigma_exact = false;
    Rational sigma_scale;
    std::vector<MultilinearPoly> coeffs;  // f_0 .. f_d, each harmonic, deg <= d-i

    // Value of the stored basis variable on the slice of weight k:
    // k itself for RawSum storage, (k - np)/sigma_scale when sigma_exact.
    Rational node_value(int k) const;
};

// The unique expansion of f (deg f <= n/2) with harmonic f_i of degree
// <= d - i such that sum f_i(x) S(x)^i = f(x) on every cube point.
BlekhermanExpansion blekherman_expand(const MultilinearPoly& f);
BlekhermanExpansion blekherman_expand(const MultilinearPoly& f,
                                      BlekhermanBasis basis, const Rational& p);

// f^sigma at level k: sum f_i * node^i, a harmonic polynomial agreeing with
// the source on slice k; equals harmonic_projection of the source whenever
// deg f <= min(k, n-k).
MultilinearPoly slice_restrict(const BlekhermanExpansion& exp, int k);

// Exact inverse of the Vandermonde V[i][j] = xi_i^j (0-based powers) via the
// UL factorization: L[i][j] = prod over t <= i, t != j of 1/(xi_j - xi_t)
// on the lower triangle, U unit upper triangular with
// U[i][j] = U[i-1][j-1] - xi_{j-1} U[i][j-1].  Throws on repeated nodes.
RatMatrix turner_inverse(const std::vector<Rational>& xi);

struct SliceSystem {
    int n = 0;
    Rational p;
    std::vector<int> levels;          // distinct, in [0, n]
    bool exact = false;               // np(1-p) a perfect rational square
    std::vector<Rational> sigma_exact;  // filled when exact
    std::vector<double> sigma;        // always filled
    double eta = 1;                   // min(1, min pairwise |sigma_i - sigma_j|)
    double M = 1;                     // max(1, max |sigma_i|)
    Rational eta_exact;               // filled when exact
    Rational M_exact;                 // filled when exact
};

// Standardized coordinates sigma_i = (k_i - np)/sqrt(np(1-p)) and the
// (eta, M) statistics, exact when the scale is rational.
SliceSystem system_stats(const std::vector<int>& levels, const Rational& p, int n);

struct InterpolationResult {
    std::vector<MultilinearPoly> coeffs;  // recovered f_0 .. f_d
    Rational max_abs_weight;              // max |c_ei| over the Turner rows
};

// Recovers the expansion coefficients from restrictions at d+1 distinct
// nodes: f_e = sum over i of c_ei * f^{sigma_i} with c = rows of
// turner_inverse(sigma).  Each restriction must be harmonic of degree <= d.
InterpolationResult interpolate_coefficients(
    const std::vector<std::pair<Rational, MultilinearPoly>>& restrictions, int d);

} // namespace slices
