#pragma once

// Exchangeable measures on {0,1}^n, represented by their moment sequence
// m_d = E[x_1 ... x_d].  All inner products route through the moments, so
// they cost O(|f| * |g|) exact rational operations; point enumeration
// exists separately as an independent oracle.

#include "slices/poly.hpp"
#include "slices/rational.hpp"

#include <cstddef>
#include <vector>

namespace slices {

enum class MeasureKind { SliceUniform, ProductBernoulli, LevelWeights };

class ExchangeableMeasure {
public:
    // Uniform measure on the slice of Hamming weight k.
    static ExchangeableMeasure slice_uniform(int n, int k);
    // Product measure with Pr[x_i = 1] = p.
    static ExchangeableMeasure product_bernoulli(int n, const Rational& p);
    // Mixture assigning weight w_l to the uniform slice of weight l;
    // w must have n+1 nonnegative entries summing to 1.
    static ExchangeableMeasure level_weights(int n, std::vector<Rational> w);

    int n() const { return n_; }
    MeasureKind kind() const { return kind_; }
    int k() const;                            // SliceUniform only
    const Rational& p() const;                // ProductBernoulli only
    const std::vector<Rational>& weights() const;  // LevelWeights only

    // m_d = E[x_1 ... x_d], 0 <= d <= n.
    const Rational& moment(int d) const;

private:
    ExchangeableMeasure() = default;
    int n_ = 0;
    MeasureKind kind_ = MeasureKind::SliceUniform;
    int k_ = 0;
    Rational p_;
    std::vector<Rational> weights_;
    std::vector<Rational> moments_;
};

Rational inner_product(const MultilinearPoly& f, const MultilinearPoly& g,
                       const ExchangeableMeasure& measure);
Rational norm_sq(const MultilinearPoly& f, const ExchangeableMeasure& measure);
Rational expectation(const MultilinearPoly& f, const ExchangeableMeasure& measure);
Rational variance(const MultilinearPoly& f, const ExchangeableMeasure& measure);

// E[(x1-x2)^2 (x3-x4)^2 ... (x_{2d-1}-x_{2d})^2]: closed form
// 2^d k^(d falling) (n-k)^(d falling) / n^(2d falling) for the slice,
// (2p(1-p))^d for the product measure, the moment route otherwise.
Rational basic_norm(const ExchangeableMeasure& measure, int d);

// Sum of f over all transpositions, sum over i<j of f^(ij).  Requires
// harmonic f; equals sum over d of [C(n,2) - d(n-d+1)] f^{=d}.
MultilinearPoly transposition_sum(const MultilinearPoly& f);

struct PoincareTriple {
    Rational lhs;  // n * Var[f]
    Rational mid;  // (1/2) sum over i<j of ||f - f^(ij)||^2
    Rational rhs;  // d(n-d+1) * Var[f]
};

// Requires harmonic f; a constant f yields the all-zero triple.
PoincareTriple poincare_bounds(const MultilinearPoly& f,
                               const ExchangeableMeasure& measure);

// Sum over i of ||df/dx_i||^2 under the measure.
Rational derivative_energy(const MultilinearPoly& f,
                           const ExchangeableMeasure& measure);

// Noise operator T_rho for the product measure mu_p: multiplies the level-i
// component in the p-biased character basis prod (x_j - p) by rho^i, so
// T_1 = identity and T_0 = the mu_p expectation.  On harmonic inputs the
// character levels coincide with the homogeneous degrees.  Exact for
// rational rho; the double overload evaluates the same transform in floats.
// budget caps the number of subset expansions (terms may fan out 2^degree).
MultilinearPoly noise_operator_cube(const MultilinearPoly& f, const Rational& rho,
                                    const Rational& p,
                                    std::size_t budget = 10'000'000);
FloatPoly noise_operator_cube(const MultilinearPoly& f, double rho,
                              const Rational& p, std::size_t budget = 10'000'000);

// Slice noise operator H_rho: multiplies the homogeneous degree-i part by
// rho^(i(1-(i-1)/n)).  Requires harmonic f (so the homogeneous parts are
// the slice decomposition); float coefficients since the exponent is
// fractional.
FloatPoly noise_operator_slice(const MultilinearPoly& f, double rho);

// Independent oracle: E[fg] by direct point enumeration (cube up to 2^20
// points, slices up to ~2*10^6 points); throws budget_error beyond.
Rational inner_product_by_enumeration(const MultilinearPoly& f,
                                      const MultilinearPoly& g,
                                      const ExchangeableMeasure& measure);

} // namespace slices
