#include "slices/blekherman.hpp"

#include "slices/comb.hpp"
#include "slices/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace slices {

namespace {

// Expansion of a homogeneous q of degree e as sum c_i S^i mod the cube
// ideal: split q = h + raise_delta(r), use raise_delta(r) = (S - (e-1)) r
// mod the ideal, and recurse on r.
std::vector<MultilinearPoly> expand_homogeneous(const MultilinearPoly& q) {
    int n = q.n();
    if (q.is_zero()) return {MultilinearPoly(n)};
    int e = q.degree().value();
    if (e == 0) return {q};
    auto [h, r] = lefschetz_split(q);
    std::vector<MultilinearPoly> inner = expand_homogeneous(r);
    while (static_cast<int>(inner.size()) < e) inner.push_back(MultilinearPoly(n));
    std::vector<MultilinearPoly> out(e + 1, MultilinearPoly(n));
    Rational shift(e - 1);
    out[0] = h - shift * inner[0];
    for (int i = 1; i < e; ++i) out[i] = inner[i - 1] - shift * inner[i];
    out[e] = inner[e - 1];
    return out;
}

} // namespace

Rational BlekhermanExpansion::node_value(int k) const {
    if (basis == BlekhermanBasis::Standardized && sigma_exact)
        return (Rational(k) - Rational(n) * p) / sigma_scale;
    return Rational(k);
}

BlekhermanExpansion blekherman_expand(const MultilinearPoly& f) {
    int n = f.n();
    int d = f.degree().value_or(0);
    if (2 * d > n)
        throw std::invalid_argument("blekherman_expand: degree must be <= n/2");
    BlekhermanExpansion out;
    out.n = n;
    out.d = d;
    out.basis = BlekhermanBasis::RawSum;
    out.coeffs.assign(d + 1, MultilinearPoly(n));
    for (int e = 0; e <= d; ++e) {
        MultilinearPoly part = homogeneous_part(f, e);
        if (part.is_zero()) continue;
        std::vector<MultilinearPoly> c = expand_homogeneous(part);
        for (std::size_t i = 0; i < c.size(); ++i)
            out.coeffs[i] = out.coeffs[i] + c[i];
    }
    return out;
}

BlekhermanExpansion blekherman_expand(const MultilinearPoly& f,
                                      BlekhermanBasis basis, const Rational& p) {
    BlekhermanExpansion out = blekherman_expand(f);
    if (basis == BlekhermanBasis::RawSum) return out;
    if (p <= 0 || p >= 1)
        throw std::invalid_argument("blekherman_expand: need 0 < p < 1");
    out.basis = BlekhermanBasis::Standardized;
    out.p = p;
    Rational scale_sq = Rational(out.n) * p * (1 - p);
    Rational scale;
    if (!rational_sqrt(scale_sq, scale)) {
        // np(1-p) has no rational square root: keep the RawSum coefficients
        // and defer the affine change of variable to restriction time.
        out.sigma_exact = false;
        return out;
    }
    out.sigma_exact = true;
    out.sigma_scale = scale;
    // S = np + scale * sigma, so S^i = sum_j C(i,j) (np)^(i-j) scale^j sigma^j.
    int d = out.d;
    Rational np = Rational(out.n) * p;
    std::vector<MultilinearPoly> converted(d + 1, MultilinearPoly(out.n));
    for (int i = 0; i <= d; ++i) {
        if (out.coeffs[i].is_zero()) continue;
        for (int j = 0; j <= i; ++j) {
            Rational w = Rational(binomial(i, j)) *
                         pow_rational(np, static_cast<unsigned>(i - j)) *
                         pow_rational(scale, static_cast<unsigned>(j));
            converted[j] = converted[j] + (w * out.coeffs[i]);
        }
    }
    out.coeffs = std::move(converted);
    return out;
}

MultilinearPoly slice_restrict(const BlekhermanExpansion& exp, int k) {
    if (k < 0 || k > exp.n)
        throw std::invalid_argument("slice_restrict: need 0 <= k <= n");
    Rational node = exp.node_value(k);
    MultilinearPoly out(exp.n);
    Rational power(1);
    for (const MultilinearPoly& coeff : exp.coeffs) {
        out = out + (power * coeff);
        power *= node;
    }
    return out;
}

RatMatrix turner_inverse(const std::vector<Rational>& xi) {
    std::size_t m = xi.size();
    if (m == 0) throw std::invalid_argument("turner_inverse: empty node list");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (xi[i] == xi[j])
                throw std::invalid_argument("turner_inverse: repeated node");

    RatMatrix lower(m, RatVector(m, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            Rational value(1);
            for (std::size_t t = 0; t <= i; ++t)
                if (t != j) value /= xi[j] - xi[t];
            lower[i][j] = value;
        }
    }

    RatMatrix upper(m, RatVector(m, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) upper[i][i] = 1;
    for (std::size_t j = 1; j < m; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            Rational above = i == 0 ? Rational(0) : upper[i - 1][j - 1];
            upper[i][j] = above - xi[j - 1] * upper[i][j - 1];
        }

    return matmul(upper, lower);
}

SliceSystem system_stats(const std::vector<int>& levels, const Rational& p, int n) {
    if (levels.empty()) throw std::invalid_argument("system_stats: no levels");
    if (p <= 0 || p >= 1) throw std::invalid_argument("system_stats: need 0 < p < 1");
    std::set<int> seen;
    for (int k : levels) {
        if (k < 0 || k > n)
            throw std::invalid_argument("system_stats: level out of range");
        if (!seen.insert(k).second)
            throw std::invalid_argument("system_stats: duplicate level");
    }
    SliceSystem out;
    out.n = n;
    out.p = p;
    out.levels = levels;
    Rational scale_sq = Rational(n) * p * (1 - p);
    Rational scale;
    out.exact = rational_sqrt(scale_sq, scale);
    Rational np = Rational(n) * p;
    double scale_f = std::sqrt(to_double(scale_sq));
    for (int k : levels) {
        if (out.exact) {
            Rational s = (Rational(k) - np) / scale;
            out.sigma_exact.push_back(s);
            out.sigma.push_back(to_double(s));
        } else {
            out.sigma.push_back((k - to_double(np)) / scale_f);
        }
    }
    if (out.exact) {
        Rational eta(1);
        for (std::size_t i = 0; i < out.sigma_exact.size(); ++i)
            for (std::size_t j = i + 1; j < out.sigma_exact.size(); ++j) {
                Rational gap = out.sigma_exact[i] - out.sigma_exact[j];
                if (gap < 0) gap = -gap;
                if (gap < eta) eta = gap;
            }
        Rational big(1);
        for (const Rational& s : out.sigma_exact) {
            Rational mag = s < 0 ? -s : s;
            if (mag > big) big = mag;
        }
        out.eta_exact = eta;
        out.M_exact = big;
        out.eta = to_double(eta);
        out.M = to_double(big);
    } else {
        double eta = 1;
        for (std::size_t i = 0; i < out.sigma.size(); ++i)
            for (std::size_t j = i + 1; j < out.sigma.size(); ++j)
                eta = std::min(eta, std::abs(out.sigma[i] - out.sigma[j]));
        double big = 1;
        for (double s : out.sigma) big = std::max(big, std::abs(s));
        out.eta = eta;
        out.M = big;
    }
    return out;
}

InterpolationResult interpolate_coefficients(
    const std::vector<std::pair<Rational, MultilinearPoly>>& restrictions, int d) {
    if (static_cast<int>(restrictions.size()) != d + 1)
        throw std::invalid_argument("interpolate_coefficients: need exactly d+1 restrictions");
    std::vector<Rational> nodes;
    for (const auto& [sigma, poly] : restrictions) {
        nodes.push_back(sigma);
        if (!is_harmonic(poly) || poly.degree().value_or(0) > d)
            throw std::invalid_argument(
                "interpolate_coefficients: restrictions must be harmonic of degree <= d");
    }
    RatMatrix weights = turner_inverse(nodes);
    int n = restrictions.front().second.n();
    InterpolationResult out;
    out.max_abs_weight = 0;
    for (int e = 0; e <= d; ++e) {
        MultilinearPoly fe(n);
        for (int i = 0; i <= d; ++i) {
            const Rational& c = weights[e][i];
            Rational mag = c < 0 ? -c : c;
            if (mag > out.max_abs_weight) out.max_abs_weight = mag;
            if (c != 0) fe = fe + (c * restrictions[i].second);
        }
        out.coeffs.push_back(fe);
    }
    return out;
}

} // namespace slices
