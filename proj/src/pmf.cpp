#include "slices/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slices {

namespace {

template <typename P>
void check_pmf(const P& pmf) {
    if (pmf.support.empty() || pmf.support.size() != pmf.probs.size())
        throw std::invalid_argument("pmf: empty or mismatched support/probs");
    for (std::size_t i = 1; i < pmf.support.size(); ++i)
        if (!(pmf.support[i - 1] < pmf.support[i]))
            throw std::invalid_argument("pmf: support must be strictly increasing");
}

} // namespace

RatPmf make_rat_pmf(const std::map<Rational, Rational>& weights) {
    RatPmf out;
    Rational total = 0;
    for (const auto& [value, prob] : weights) {
        if (prob < 0) throw std::invalid_argument("pmf: negative probability");
        if (prob == 0) continue;
        out.support.push_back(value);
        out.probs.push_back(prob);
        total += prob;
    }
    if (total != 1) throw std::invalid_argument("pmf: probabilities must sum to 1");
    return out;
}

Pmf make_pmf(const std::map<double, double>& weights) {
    Pmf out;
    for (const auto& [value, prob] : weights) {
        if (prob < 0) throw std::invalid_argument("pmf: negative probability");
        if (prob == 0) continue;
        out.support.push_back(value);
        out.probs.push_back(prob);
    }
    if (out.support.empty()) throw std::invalid_argument("pmf: empty distribution");
    return out;
}

Pmf to_float(const RatPmf& pmf) {
    Pmf out;
    for (const Rational& v : pmf.support) out.support.push_back(to_double(v));
    for (const Rational& q : pmf.probs) out.probs.push_back(to_double(q));
    return out;
}

namespace {

// Half of the L1 difference over the merged support.
template <typename P, typename S>
S tv_impl(const P& a, const P& b) {
    std::size_t i = 0, j = 0;
    S total = 0;
    while (i < a.support.size() || j < b.support.size()) {
        bool take_a = j == b.support.size() ||
                      (i < a.support.size() && a.support[i] <= b.support[j]);
        bool take_b = i == a.support.size() ||
                      (j < b.support.size() && b.support[j] <= a.support[i]);
        S diff = 0;
        if (take_a) diff += S(a.probs[i]);
        if (take_b) diff -= S(b.probs[j]);
        if (take_a) ++i;
        if (take_b) ++j;
        total += diff < 0 ? S(-diff) : diff;
    }
    return total / 2;
}

template <typename P, typename S>
S cdf_impl(const P& a, const P& b) {
    std::size_t i = 0, j = 0;
    S fa = 0, fb = 0, best = 0;
    while (i < a.support.size() || j < b.support.size()) {
        bool take_a = j == b.support.size() ||
                      (i < a.support.size() && a.support[i] <= b.support[j]);
        bool take_b = i == a.support.size() ||
                      (j < b.support.size() && b.support[j] <= a.support[i]);
        if (take_a) fa += S(a.probs[i]), ++i;
        if (take_b) fb += S(b.probs[j]), ++j;
        S gap = fa - fb;
        if (gap < 0) gap = -gap;
        if (gap > best) best = gap;
    }
    return best;
}

// CDF helpers on the raw (unscaled) coordinate.
Rational cdf_at(const RatPmf& pmf, const Rational& x) {
    Rational total = 0;
    for (std::size_t i = 0; i < pmf.support.size() && pmf.support[i] <= x; ++i)
        total += pmf.probs[i];
    return total;
}

Rational cdf_below(const RatPmf& pmf, const Rational& x) {
    Rational total = 0;
    for (std::size_t i = 0; i < pmf.support.size() && pmf.support[i] < x; ++i)
        total += pmf.probs[i];
    return total;
}

// sup_x [G(x) - F(x + delta)] for the step CDFs of g and f, evaluated on
// the raw coordinate.  The supremum is attained either at an atom of G or
// just below (atom of F) - delta.
Rational sweep_dir(const RatPmf& f, const RatPmf& g, const Rational& delta) {
    Rational best = 0;
    for (const Rational& atom : g.support) {
        Rational v = cdf_at(g, atom) - cdf_at(f, atom + delta);
        if (v > best) best = v;
    }
    for (const Rational& atom : f.support) {
        Rational v = cdf_below(g, atom - delta) - cdf_below(f, atom);
        if (v > best) best = v;
    }
    return best;
}

// Two-sided vertical discrepancy at horizontal slack delta (raw units).
Rational sweep_w(const RatPmf& a, const RatPmf& b, const Rational& delta) {
    Rational w = sweep_dir(a, b, delta);
    Rational other = sweep_dir(b, a, delta);
    return other > w ? other : w;
}

// Float supports often carry rounding from upstream scaling, so an atom
// reconstructed as atom + delta can land one ulp away from the support value
// that defined the breakpoint.  Comparisons take a small slack so that
// near-ties count as the exact ties they are in the unrounded data.
double cdf_at(const Pmf& pmf, double x, double tol) {
    double total = 0;
    for (std::size_t i = 0; i < pmf.support.size() && pmf.support[i] <= x + tol; ++i)
        total += pmf.probs[i];
    return total;
}

double cdf_below(const Pmf& pmf, double x, double tol) {
    double total = 0;
    for (std::size_t i = 0; i < pmf.support.size() && pmf.support[i] < x - tol; ++i)
        total += pmf.probs[i];
    return total;
}

double sweep_dir(const Pmf& f, const Pmf& g, double delta, double tol) {
    double best = 0;
    for (double atom : g.support)
        best = std::max(best, cdf_at(g, atom, tol) - cdf_at(f, atom + delta, tol));
    for (double atom : f.support)
        best = std::max(best, cdf_below(g, atom - delta, tol) - cdf_below(f, atom, tol));
    return best;
}

double sweep_w(const Pmf& a, const Pmf& b, double delta, double tol) {
    return std::max(sweep_dir(a, b, delta, tol), sweep_dir(b, a, delta, tol));
}

double tie_tol(const Pmf& a, const Pmf& b) {
    double m = 1;
    for (double s : a.support) m = std::max(m, std::abs(s));
    for (double s : b.support) m = std::max(m, std::abs(s));
    return m * 1e-12;
}

std::vector<Rational> breakpoints(const RatPmf& a, const RatPmf& b) {
    std::vector<Rational> out;
    out.push_back(0);
    for (const Rational& s : a.support)
        for (const Rational& g : b.support) {
            Rational d = s - g;
            if (d < 0) d = -d;
            if (d > 0) out.push_back(d);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// A candidate epsilon: either a plain rational (vertical origin) or a
// rational multiple of the horizontal unit u = 1/sqrt(scale_sq).
struct Cand {
    bool is_scaled = false;
    Rational v;  // nonnegative
};

// Compares values, where scaled candidates mean v * u with u^2 = usq.
bool cand_less(const Cand& x, const Cand& y, const Rational& usq) {
    if (x.is_scaled == y.is_scaled) return x.v < y.v;
    if (x.is_scaled) return x.v * x.v * usq < y.v * y.v;
    return x.v * x.v < y.v * y.v * usq;
}

} // namespace

Rational tv_distance(const RatPmf& a, const RatPmf& b) {
    check_pmf(a);
    check_pmf(b);
    return tv_impl<RatPmf, Rational>(a, b);
}

double tv_distance(const Pmf& a, const Pmf& b) {
    check_pmf(a);
    check_pmf(b);
    return tv_impl<Pmf, double>(a, b);
}

Rational cdf_distance(const RatPmf& a, const RatPmf& b) {
    check_pmf(a);
    check_pmf(b);
    return cdf_impl<RatPmf, Rational>(a, b);
}

double cdf_distance(const Pmf& a, const Pmf& b) {
    check_pmf(a);
    check_pmf(b);
    return cdf_impl<Pmf, double>(a, b);
}

ScaledLevy levy_distance_scaled(const RatPmf& a, const RatPmf& b,
                                const Rational& scale_sq) {
    check_pmf(a);
    check_pmf(b);
    if (scale_sq <= 0)
        throw std::invalid_argument("levy_distance_scaled: scale must be positive");
    Rational usq = 1 / scale_sq;
    Rational u_exact;
    bool u_rational = rational_sqrt(usq, u_exact);

    std::vector<Rational> deltas = breakpoints(a, b);
    Cand answer;
    bool found = false;
    for (std::size_t t = 0; t < deltas.size() && !found; ++t) {
        Rational w = sweep_w(a, b, deltas[t]);
        Cand e{true, deltas[t]};
        Cand c = w > 0 ? Cand{false, w} : e;
        if (cand_less(c, e, usq)) c = e;
        if (t + 1 < deltas.size()) {
            Cand next{true, deltas[t + 1]};
            if (!cand_less(c, next, usq)) continue;
        }
        answer = c;
        found = true;
    }

    ScaledLevy out;
    if (answer.is_scaled && answer.v == 0) answer.is_scaled = false;
    if (answer.is_scaled && u_rational) {
        answer.is_scaled = false;
        answer.v *= u_exact;
    }
    if (answer.is_scaled) {
        out.scaled = answer.v;
        out.approx = to_double(answer.v) / std::sqrt(to_double(scale_sq));
    } else {
        out.exact = answer.v;
        out.approx = to_double(answer.v);
    }
    return out;
}

Rational levy_distance(const RatPmf& a, const RatPmf& b) {
    return levy_distance_scaled(a, b, Rational(1)).exact.value();
}

double levy_distance(const Pmf& a, const Pmf& b) {
    check_pmf(a);
    check_pmf(b);
    double tol = tie_tol(a, b);
    std::vector<double> deltas;
    deltas.push_back(0);
    for (double s : a.support)
        for (double g : b.support)
            if (std::abs(s - g) > tol) deltas.push_back(std::abs(s - g));
    std::sort(deltas.begin(), deltas.end());
    deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
    for (std::size_t t = 0; t < deltas.size(); ++t) {
        double c = std::max(deltas[t], sweep_w(a, b, deltas[t], tol));
        if (t + 1 == deltas.size() || c < deltas[t + 1]) return c;
    }
    return 0;
}

} // namespace slices
