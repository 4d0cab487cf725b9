#pragma once

// Harmonic representations on slices: the Lefschetz splitting of homogeneous
// polynomials, harmonic projection onto a slice, value-space projection
// through the Gelfand-Tsetlin basis, and the GT basis itself.

#include "slices/measures.hpp"
#include "slices/poly.hpp"
#include "slices/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace slices {

struct SliceSpec {
    int n = 0;
    int k = 0;

    SliceSpec(int n_, int k_);
    int max_degree() const { return k < n - k ? k : n - k; }
    Rational p() const { return rat(k, n); }
};

// Splits a homogeneous q of degree d (1 <= d <= n/2) as q = h + raise_delta(r)
// with h harmonic homogeneous of degree d and r homogeneous of degree d-1.
// The pair is unique.  Computed by the sl2 ladder recursion on lower_delta
// rather than a dense linear solve, so it stays exact and fast; the linear
// system route survives in the tests as an independent oracle.
std::pair<MultilinearPoly, MultilinearPoly> lefschetz_split(const MultilinearPoly& q);

// Full ladder decomposition of homogeneous q of degree m <= n/2:
// returns h_0..h_m harmonic with q = sum over j of raise_delta^(m-j) h_j.
std::vector<MultilinearPoly> lefschetz_components(const MultilinearPoly& q);

// The unique harmonic multilinear polynomial of degree <= min(k, n-k)
// agreeing with f on the slice.  Degrees above k drop (x_S = 0 on the
// slice); for k > n/2 the complement substitution x -> 1-x reduces to the
// small side; then the top homogeneous part is split and raise_delta(r) is
// replaced by (k-d+1) r, descending one degree at a time.
MultilinearPoly harmonic_projection(const MultilinearPoly& f, const SliceSpec& slice);

// A function on the slice: value at each point, keyed by the point's mask.
using SliceValues = std::map<Mask, Rational>;

// The unique harmonic multilinear representation of a function given by its
// values on all C(n,k) slice points, via the Gelfand-Tsetlin expansion
// (independent of the harmonic_projection route).  Throws on missing or
// extra points.
MultilinearPoly project_values(const SliceValues& values, const SliceSpec& slice);

// Degree of the harmonic representation of the given slice function
// (0 for constants, including the zero function).
int slice_degree(const SliceValues& values, const SliceSpec& slice);

struct AdmissibleSet {
    // Strictly increasing entries in [n], b_i >= 2i (1-based); the bottom
    // row of a standard Young tableau of shape (n-d, d).
    std::vector<int> b;
};

// All admissible sets of size d in [n]; count C(n,d) - C(n,d-1).
// Requires 0 <= 2d <= n.
std::vector<AdmissibleSet> gt_admissible_sets(int n, int d);

// chi_B: the sum over completions (a_1,...,a_d) - a_i < b_i, all a_i and
// b_i distinct - of prod (x_{a_i} - x_{b_i}).  Harmonic homogeneous of
// degree |B|.
MultilinearPoly gt_basis_element(const AdmissibleSet& B, int n);

// ||chi_B||^2 under any exchangeable measure:
// prod over i of C(b_i - 2(i-1), 2) times basic_norm(measure, |B|).
Rational gt_norm_squared(const AdmissibleSet& B, const ExchangeableMeasure& measure);

// Applies the partial Young-Jucys-Murphy sum: f -> sum over i < l <= m
// of f^(il).  On chi_B returns [C(m,2) - t(m+1-t)] chi_B with t = |B in [m]|.
MultilinearPoly yjm_apply(int m, const MultilinearPoly& f);

// Memoized GT basis for degree d on n variables, in admissible-set order.
// Safe for concurrent callers.
const std::vector<MultilinearPoly>& gt_basis(int n, int d);

} // namespace slices
