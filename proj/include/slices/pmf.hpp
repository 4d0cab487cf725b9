#pragma once

// Finite distributions on the line and the three distances used by the
// experiments: total variation, Kolmogorov (CDF), and Levy.  Rational pmfs
// keep every computation exact; float pmfs serve empirical data.

#include "slices/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace slices {

// Exact pmf: strictly increasing support, positive rational weights, sum 1.
struct RatPmf {
    std::vector<Rational> support;
    std::vector<Rational> probs;
};

// Float pmf with the same shape; weights sum to 1 within float error.
struct Pmf {
    std::vector<double> support;
    std::vector<double> probs;
};

RatPmf make_rat_pmf(const std::map<Rational, Rational>& weights);
Pmf make_pmf(const std::map<double, double>& weights);
Pmf to_float(const RatPmf& pmf);

Rational tv_distance(const RatPmf& a, const RatPmf& b);
double tv_distance(const Pmf& a, const Pmf& b);

// sup_t |F_a(t) - F_b(t)|.
Rational cdf_distance(const RatPmf& a, const RatPmf& b);
double cdf_distance(const Pmf& a, const Pmf& b);

// Levy distance: the least eps >= 0 with
// F(t - eps) - eps <= G(t) <= F(t + eps) + eps for all t.  For step CDFs
// the infimum is attained; the sweep over support-difference breakpoints
// finds it exactly.
Rational levy_distance(const RatPmf& a, const RatPmf& b);
double levy_distance(const Pmf& a, const Pmf& b);

// Levy distance between a/c and b/c where c = sqrt(scale_sq) > 0, i.e. the
// distributions after dividing both supports by a common (possibly
// irrational) normalization.  Exact decision arithmetic throughout: the
// result is either a rational (returned in `exact`) or a rational multiple
// of 1/c (returned in `scaled`, meaning scaled/c); `approx` always carries
// the double value.
struct ScaledLevy {
    std::optional<Rational> exact;
    std::optional<Rational> scaled;
    double approx = 0;
};

ScaledLevy levy_distance_scaled(const RatPmf& a, const RatPmf& b,
                                const Rational& scale_sq);

} // namespace slices
