#pragma once

// The maximal-chain coupling of all slices: chain sampling, the U/D/C
// martingale decomposition, exact value distributions, coupled second
// moments, projected total variation, total influence, and the hybrid
// decomposition.

#include "slices/blekherman.hpp"
#include "slices/pmf.hpp"
#include "slices/poly.hpp"
#include "slices/rational.hpp"
#include "slices/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace slices {

struct ChainSample {
    int n = 0;
    // order[s] = coordinate (0-based) added at step s+1, so
    // X(s) = {order[0], ..., order[s-1]}.
    std::vector<int> order;

    Mask prefix(int s) const;
};

// Uniform random maximal chain (Fisher-Yates); X(s) is uniform on slice s.
ChainSample sample_chain(int n, Rng& rng);

struct MartingaleTerms {
    int s = 0;
    Rational U;
    Rational D;
    Rational C;  // (n-s) U - s D
};

// The up/down martingale differences at step s (1 <= s <= n-1) for a
// harmonic f along the given chain, with conditional expectations computed
// exactly through the derivative sums.  For harmonic f,
// C(s) = (n-s) f(X(s+1)) - (n-2s) f(X(s)) - s f(X(s-1)).
MartingaleTerms martingale_terms(const MultilinearPoly& f,
                                 const ChainSample& chain, int s);

// Mask-level building blocks (a = X(s), b = X(s+1), |b| = |a| + 1); used by
// martingale_terms and by the exact joint-law enumerations in the tests.
Rational martingale_u(const MultilinearPoly& f, Mask a, Mask b);
Rational martingale_d(const MultilinearPoly& f, Mask a, Mask b);

struct Domain {
    enum class Kind { Slice, Cube };
    Kind kind = Kind::Slice;
    int k = 0;      // Slice level
    Rational p;     // Cube bias

    static Domain slice(int k);
    static Domain cube(const Rational& p);
};

// Exact distribution of f's values under nu_k or mu_p.  Projects onto the
// coordinates f actually uses whenever possible, so the cost is
// min(2^(used coords), points in the domain); throws budget_error when both
// exceed the budget.
RatPmf exact_distribution(const MultilinearPoly& f, const Domain& domain,
                          std::size_t budget = 2'000'000);

// Enumerates all nested tuples A_1 c A_2 c ... c A_r with |A_i| = levels[i]
// (levels strictly increasing); the uniform distribution over these tuples
// is the chain's joint marginal at those levels.  Throws budget_error when
// the tuple count exceeds the budget.
void enumerate_nested(int n, const std::vector<int>& levels,
                      const std::function<void(const std::vector<Mask>&)>& fn,
                      std::size_t budget = 10'000'000);

// E[(f(X(k)) - f(X(l)))^2] along the chain, k <= l.  Closed form in
// O(|f|^2) falling-factorial products; the nested-pair enumeration below is
// the independent oracle.
Rational coupled_second_moment(const MultilinearPoly& f, int k, int ell);
Rational coupled_second_moment_by_enumeration(const MultilinearPoly& f, int k,
                                              int ell,
                                              std::size_t budget = 10'000'000);

struct MonteCarloEstimate {
    double mean = 0;
    double std_error = 0;
    std::uint64_t samples = 0;
};

// Monte Carlo version; samples are split across `threads` workers with
// per-worker derived streams and merged by summation, so the result depends
// only on (seed, samples, threads).
MonteCarloEstimate coupled_second_moment_mc(const MultilinearPoly& f, int k,
                                            int ell, std::uint64_t samples,
                                            std::uint64_t seed, int threads);

// Exact total variation between the projections of nu_k and mu_p onto the
// first m coordinates, aggregated by Hamming weight.
Rational projected_tv(int n, int k, const Rational& p, int m);

// Total influence p(1-p) n Pr[f(x) != f(y)] of a Boolean (0/1-valued) f,
// x ~ mu_p and y a uniform neighbor, summed exactly over directed edges.
Rational total_influence(const MultilinearPoly& f, const Rational& p);

// The chain form of the same quantity: sum over s of
// p(1-p) n Pr[T = s] Pr[f(X(s)) != f(X(s+1))] with T ~ Bin(n-1, p).
Rational total_influence_chain_form(const MultilinearPoly& f, const Rational& p);

// Hybrid decomposition for Boolean f with np integral: lhs =
// Pr[f(X(S)) != f(X(np))] with S ~ Bin(n, p) on the coupled chain; rhs =
// the per-step tail-weighted sum bounding it.  Returns (lhs, rhs).
std::pair<Rational, Rational> hybrid_bound(const MultilinearPoly& f,
                                           const Rational& p,
                                           std::size_t budget = 10'000'000);

// `samples` rows of (f(X(k_1)), ..., f(X(k_r))) along shared random chains.
std::vector<std::vector<Rational>> empirical_profile(const MultilinearPoly& f,
                                                     const SliceSystem& system,
                                                     std::uint64_t samples,
                                                     Rng& rng);

} // namespace slices
