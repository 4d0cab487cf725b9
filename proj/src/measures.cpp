#include "slices/measures.hpp"

#include "slices/comb.hpp"
#include "slices/error.hpp"

#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace slices {

namespace {

void check_same_n(const MultilinearPoly& f, const ExchangeableMeasure& measure) {
    if (f.n() != measure.n())
        throw std::invalid_argument("polynomial and measure dimensions differ");
}

std::vector<int> transposition(int n, int i, int j) {
    std::vector<int> pi(n);
    for (int t = 0; t < n; ++t) pi[t] = t;
    pi[i] = j;
    pi[j] = i;
    return pi;
}

} // namespace

ExchangeableMeasure ExchangeableMeasure::slice_uniform(int n, int k) {
    if (n < 1 || k < 0 || k > n)
        throw std::invalid_argument("slice_uniform: need 0 <= k <= n");
    ExchangeableMeasure m;
    m.n_ = n;
    m.kind_ = MeasureKind::SliceUniform;
    m.k_ = k;
    m.moments_.resize(n + 1);
    for (int d = 0; d <= n; ++d)
        m.moments_[d] = d <= k ? falling_ratio(k, n, d) : Rational(0);
    return m;
}

ExchangeableMeasure ExchangeableMeasure::product_bernoulli(int n, const Rational& p) {
    if (n < 1 || p < 0 || p > 1)
        throw std::invalid_argument("product_bernoulli: need 0 <= p <= 1");
    ExchangeableMeasure m;
    m.n_ = n;
    m.kind_ = MeasureKind::ProductBernoulli;
    m.p_ = p;
    m.moments_.resize(n + 1);
    for (int d = 0; d <= n; ++d) m.moments_[d] = pow_rational(p, d);
    return m;
}

ExchangeableMeasure ExchangeableMeasure::level_weights(int n, std::vector<Rational> w) {
    if (n < 1 || static_cast<int>(w.size()) != n + 1)
        throw std::invalid_argument("level_weights: need n+1 weights");
    Rational total = 0;
    for (const Rational& wl : w) {
        if (wl < 0) throw std::invalid_argument("level_weights: negative weight");
        total += wl;
    }
    if (total != 1) throw std::invalid_argument("level_weights: weights must sum to 1");
    ExchangeableMeasure m;
    m.n_ = n;
    m.kind_ = MeasureKind::LevelWeights;
    m.weights_ = std::move(w);
    m.moments_.resize(n + 1);
    for (int d = 0; d <= n; ++d) {
        Rational md = 0;
        for (int l = d; l <= n; ++l)
            if (m.weights_[l] != 0) md += m.weights_[l] * falling_ratio(l, n, d);
        m.moments_[d] = md;
    }
    return m;
}

int ExchangeableMeasure::k() const {
    if (kind_ != MeasureKind::SliceUniform)
        throw std::logic_error("k() is only defined for slice measures");
    return k_;
}

const Rational& ExchangeableMeasure::p() const {
    if (kind_ != MeasureKind::ProductBernoulli)
        throw std::logic_error("p() is only defined for product measures");
    return p_;
}

const std::vector<Rational>& ExchangeableMeasure::weights() const {
    if (kind_ != MeasureKind::LevelWeights)
        throw std::logic_error("weights() is only defined for level-weight measures");
    return weights_;
}

const Rational& ExchangeableMeasure::moment(int d) const {
    if (d < 0 || d > n_) throw std::invalid_argument("moment: need 0 <= d <= n");
    return moments_[d];
}

Rational inner_product(const MultilinearPoly& f, const MultilinearPoly& g,
                       const ExchangeableMeasure& measure) {
    check_same_n(f, measure);
    check_same_n(g, measure);
    Rational total = 0;
    for (const auto& [s, cs] : f.terms())
        for (const auto& [t, ct] : g.terms())
            total += cs * ct * measure.moment(popcount(s | t));
    return total;
}

Rational norm_sq(const MultilinearPoly& f, const ExchangeableMeasure& measure) {
    return inner_product(f, f, measure);
}

Rational expectation(const MultilinearPoly& f, const ExchangeableMeasure& measure) {
    check_same_n(f, measure);
    Rational total = 0;
    for (const auto& [s, cs] : f.terms()) total += cs * measure.moment(popcount(s));
    return total;
}

Rational variance(const MultilinearPoly& f, const ExchangeableMeasure& measure) {
    Rational mean = expectation(f, measure);
    return norm_sq(f, measure) - mean * mean;
}

Rational basic_norm(const ExchangeableMeasure& measure, int d) {
    int n = measure.n();
    if (d < 0 || 2 * d > n) throw std::invalid_argument("basic_norm: need 0 <= 2d <= n");
    switch (measure.kind()) {
        case MeasureKind::SliceUniform: {
            int k = measure.k();
            Rational out = pow_rational(Rational(2), d);
            out *= Rational(falling(k, d) * falling(n - k, d), falling(n, 2 * d));
            out.canonicalize();
            return out;
        }
        case MeasureKind::ProductBernoulli: {
            Rational base = 2 * measure.p() * (1 - measure.p());
            return pow_rational(base, d);
        }
        case MeasureKind::LevelWeights: {
            MultilinearPoly basic = basic_function(n, d);
            return inner_product(basic, basic, measure);
        }
    }
    throw std::logic_error("basic_norm: unknown measure kind");
}

MultilinearPoly transposition_sum(const MultilinearPoly& f) {
    if (!is_harmonic(f))
        throw std::invalid_argument("transposition_sum: input must be harmonic");
    int n = f.n();
    MultilinearPoly out(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            out = out + permute(f, transposition(n, i, j));
    return out;
}

PoincareTriple poincare_bounds(const MultilinearPoly& f,
                               const ExchangeableMeasure& measure) {
    if (!is_harmonic(f))
        throw std::invalid_argument("poincare_bounds: input must be harmonic");
    check_same_n(f, measure);
    int d = f.degree().value_or(0);
    if (d == 0) return PoincareTriple{0, 0, 0};
    int n = f.n();
    Rational var = variance(f, measure);
    // (1/2) sum ||f - f^(ij)||^2 = C(n,2) ||f||^2 - <f, sum f^(ij)>, since
    // ||f^(ij)|| = ||f|| under an exchangeable measure; the transposition
    // sum itself is the explicit permutation sum, not the eigenvalue form.
    Rational mid = Rational(binomial(n, 2)) * norm_sq(f, measure) -
                   inner_product(f, transposition_sum(f), measure);
    PoincareTriple out;
    out.lhs = Rational(n) * var;
    out.mid = mid;
    out.rhs = Rational(d) * Rational(n - d + 1) * var;
    return out;
}

Rational derivative_energy(const MultilinearPoly& f,
                           const ExchangeableMeasure& measure) {
    check_same_n(f, measure);
    Rational total = 0;
    for (int i = 0; i < f.n(); ++i) {
        MultilinearPoly df = partial_derivative(f, i);
        if (!df.is_zero()) total += norm_sq(df, measure);
    }
    return total;
}

namespace {

// T_rho via the p-biased character basis phi_S = prod (x_i - p):
// x_T = sum over S <= T of p^(|T|-|S|) phi_S, and back
// phi_S = sum over U <= S of (-p)^(|S|-|U|) x_U.  Scalar is Rational or
// double; both run the same subset fan-out with a shared budget guard.
template <typename Scalar>
std::map<Mask, Scalar, SubsetOrder> noise_transform(const MultilinearPoly& f,
                                                    const Scalar& rho,
                                                    const Scalar& p,
                                                    std::size_t budget) {
    std::size_t cost = 0;
    for (const auto& [vars, c] : f.terms()) {
        cost += std::size_t(1) << popcount(vars);
        if (cost > budget)
            throw budget_error("noise operator: subset expansion budget exceeded");
    }

    std::map<Mask, Scalar, SubsetOrder> hat;
    for (const auto& [vars, c] : f.terms()) {
        Scalar coef;
        if constexpr (std::is_same_v<Scalar, Rational>)
            coef = c;
        else
            coef = to_double(c);
        // Enumerate S <= vars.
        Mask s = vars;
        while (true) {
            Scalar weight = coef;
            int drop = popcount(vars) - popcount(s);
            for (int t = 0; t < drop; ++t) weight *= p;
            hat[s] += weight;
            if (s == 0) break;
            s = (s - 1) & vars;
        }
    }

    cost = 0;
    std::map<Mask, Scalar, SubsetOrder> out;
    for (auto& [s, value] : hat) {
        for (int t = 0; t < popcount(s); ++t) value *= rho;
        if (value == Scalar(0)) continue;
        cost += std::size_t(1) << popcount(s);
        if (cost > budget)
            throw budget_error("noise operator: subset expansion budget exceeded");
        Mask u = s;
        while (true) {
            Scalar weight = value;
            int drop = popcount(s) - popcount(u);
            for (int t = 0; t < drop; ++t) weight *= -p;
            out[u] += weight;
            if (u == 0) break;
            u = (u - 1) & s;
        }
    }
    return out;
}

} // namespace

MultilinearPoly noise_operator_cube(const MultilinearPoly& f, const Rational& rho,
                                    const Rational& p, std::size_t budget) {
    auto terms = noise_transform<Rational>(f, rho, p, budget);
    MultilinearPoly out(f.n());
    for (const auto& [vars, c] : terms) out.add_term(vars, c);
    return out;
}

FloatPoly noise_operator_cube(const MultilinearPoly& f, double rho,
                              const Rational& p, std::size_t budget) {
    auto terms = noise_transform<double>(f, rho, to_double(p), budget);
    FloatPoly out;
    out.n = f.n();
    for (const auto& [vars, c] : terms)
        if (c != 0) out.terms[vars] = c;
    return out;
}

FloatPoly noise_operator_slice(const MultilinearPoly& f, double rho) {
    if (!is_harmonic(f))
        throw std::invalid_argument("noise_operator_slice: input must be harmonic");
    int n = f.n();
    FloatPoly out;
    out.n = n;
    for (const auto& [vars, c] : f.terms()) {
        int i = popcount(vars);
        double exponent = i * (1.0 - (i - 1.0) / n);
        out.terms[vars] = std::pow(rho, exponent) * to_double(c);
    }
    return out;
}

Rational inner_product_by_enumeration(const MultilinearPoly& f,
                                      const MultilinearPoly& g,
                                      const ExchangeableMeasure& measure) {
    check_same_n(f, measure);
    check_same_n(g, measure);
    int n = measure.n();
    if (n <= 20) {
        std::vector<Rational> fv = evaluate_on_cube(f);
        std::vector<Rational> gv = evaluate_on_cube(g);
        Rational total = 0;
        switch (measure.kind()) {
            case MeasureKind::SliceUniform: {
                int k = measure.k();
                Rational each(1, binomial(n, k));
                each.canonicalize();
                for (Mask x = 0; x < fv.size(); ++x)
                    if (popcount(x) == k) total += each * fv[x] * gv[x];
                return total;
            }
            case MeasureKind::ProductBernoulli: {
                const Rational& p = measure.p();
                Rational q = 1 - p;
                for (Mask x = 0; x < fv.size(); ++x) {
                    int ones = popcount(x);
                    total += pow_rational(p, ones) * pow_rational(q, n - ones) *
                             fv[x] * gv[x];
                }
                return total;
            }
            case MeasureKind::LevelWeights: {
                const auto& w = measure.weights();
                std::vector<Rational> point_weight(n + 1);
                for (int l = 0; l <= n; ++l) {
                    point_weight[l] = w[l] / Rational(binomial(n, l));
                    point_weight[l].canonicalize();
                }
                for (Mask x = 0; x < fv.size(); ++x)
                    total += point_weight[popcount(x)] * fv[x] * gv[x];
                return total;
            }
        }
    }
    if (measure.kind() == MeasureKind::SliceUniform) {
        int k = measure.k();
        Integer points = binomial(n, k);
        if (points <= 2'000'000) {
            Rational each(1, points);
            each.canonicalize();
            Rational total = 0;
            // Gosper's hack over all k-subsets of [n].
            Mask x = (Mask(1) << k) - 1;
            Mask limit = Mask(1) << n;
            while (x < limit) {
                CubePoint pt{n, x};
                total += each * evaluate(f, pt) * evaluate(g, pt);
                if (x == 0) break;
                Mask c = x & (~x + 1);
                Mask r = x + c;
                x = (((r ^ x) >> 2) / c) | r;
            }
            return total;
        }
    }
    throw budget_error("inner_product_by_enumeration: domain too large");
}

} // namespace slices
