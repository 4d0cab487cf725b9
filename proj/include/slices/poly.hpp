#pragma once

// Sparse multilinear polynomials over the rationals in up to 64 variables.
//
// A polynomial on {0,1}^n is stored as a map from variable subsets (bitmask,
// bit i = variable x_{i+1}) to rational coefficients.  Keys are ordered by
// degree first and then by the sorted index sequence of the subset, so
// iteration matches the canonical term order used by the text format.

#include "slices/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace slices {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }

// Orders subsets by cardinality, then by comparing sorted index sequences
// lexicographically.  For equal-size subsets the lowest differing index
// decides: the set containing it comes first.  E.g. {1,4} < {2,3}.
struct SubsetOrder {
    bool operator()(Mask a, Mask b) const {
        int pa = popcount(a), pb = popcount(b);
        if (pa != pb) return pa < pb;
        Mask diff = a ^ b;
        if (diff == 0) return false;
        Mask low = diff & (~diff + 1);
        return (a & low) != 0;
    }
};

// A point of the cube {0,1}^n, as the subset of coordinates equal to 1.
struct CubePoint {
    int n = 0;
    Mask bits = 0;
};

class MultilinearPoly {
public:
    using TermMap = std::map<Mask, Rational, SubsetOrder>;

    explicit MultilinearPoly(int n);

    static MultilinearPoly constant(int n, const Rational& c);
    static MultilinearPoly monomial(int n, Mask vars, const Rational& c);

    int n() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Largest term cardinality, or nullopt for the zero polynomial.
    std::optional<int> degree() const;

    Rational coeff(Mask vars) const;

    // Adds c * x_vars, erasing the entry if the sum cancels.
    void add_term(Mask vars, const Rational& c);

private:
    int n_;
    TermMap terms_;
};

MultilinearPoly operator+(const MultilinearPoly& f, const MultilinearPoly& g);
MultilinearPoly operator-(const MultilinearPoly& f, const MultilinearPoly& g);
MultilinearPoly operator-(const MultilinearPoly& f);
MultilinearPoly operator*(const Rational& c, const MultilinearPoly& f);

Rational evaluate(const MultilinearPoly& f, const CubePoint& x);

// All 2^n values of f in subset-mask index order, via the zeta transform.
// O(2^n * n) time; requires n <= 26 or so in practice.
std::vector<Rational> evaluate_on_cube(const MultilinearPoly& f);

// Inverse of evaluate_on_cube: the unique multilinear interpolant of the
// given table of 2^n values, via the Moebius transform.
MultilinearPoly from_cube_values(int n, const std::vector<Rational>& values);

// Product of multilinear polynomials.  With reduce = true, squares collapse
// (x_i^2 = x_i on the cube) and the result is again multilinear.  With
// reduce = false the inputs must not share any variable; otherwise the
// product would leave the multilinear space, and the call throws.
MultilinearPoly multiply(const MultilinearPoly& f, const MultilinearPoly& g,
                         bool reduce);

// Lowering operator: x_S -> sum over i in S of x_{S minus i}.
MultilinearPoly lower_delta(const MultilinearPoly& f);

// Raising operator: x_S -> sum over i not in S of x_{S union i}.
MultilinearPoly raise_delta(const MultilinearPoly& f);

// Relabels variables: the term on S becomes a term on pi(S).  pi is a
// permutation of {0, ..., n-1} given as the image list, so
// permute(f, pi)(x) = f restricted along x_{pi(i)} playing the role the
// relabelled variable: evaluate(permute(f, pi), x) = evaluate(f, pi^{-1}(x)).
MultilinearPoly permute(const MultilinearPoly& f, const std::vector<int>& pi);

// Terms of exactly degree d.
MultilinearPoly homogeneous_part(const MultilinearPoly& f, int d);

// d/dx_i (formal partial derivative of the multilinear form), 0-based i.
MultilinearPoly partial_derivative(const MultilinearPoly& f, int i);

// True iff the sum of all partial derivatives vanishes identically.
bool is_harmonic(const MultilinearPoly& f);

// The basic harmonic function of degree d on n variables:
// (x_1 - x_2)(x_3 - x_4) ... (x_{2d-1} - x_{2d}).  Requires 2d <= n.
MultilinearPoly basic_function(int n, int d);

// Canonical text form: terms in SubsetOrder, each "+num/den * x1x3" with an
// explicit sign, separated by single spaces; the zero polynomial is "0".
std::string to_text(const MultilinearPoly& f);

// Parses the canonical text form (and tolerates missing "+" on the leading
// term and extra whitespace).  Throws std::invalid_argument on bad input.
MultilinearPoly poly_from_text(int n, const std::string& text);

// Float-coefficient variant used where exact arithmetic is unavailable
// (irrational noise rates, floating summaries).
struct FloatPoly {
    int n = 0;
    std::map<Mask, double, SubsetOrder> terms;
};

FloatPoly to_float(const MultilinearPoly& f);
double evaluate(const FloatPoly& f, const CubePoint& x);

} // namespace slices
