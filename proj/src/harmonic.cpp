#include "slices/harmonic.hpp"

#include "slices/comb.hpp"
#include "slices/error.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace slices {

SliceSpec::SliceSpec(int n_, int k_) : n(n_), k(k_) {
    if (n < 1 || k < 0 || k > n)
        throw std::invalid_argument("SliceSpec: need 0 <= k <= n");
}

namespace {

// Degree of a homogeneous polynomial; throws when terms mix degrees.
int homogeneous_degree(const MultilinearPoly& q) {
    int d = -1;
    for (const auto& [vars, c] : q.terms()) {
        int pc = popcount(vars);
        if (d == -1) d = pc;
        else if (d != pc)
            throw std::invalid_argument("expected a homogeneous polynomial");
    }
    return d < 0 ? 0 : d;
}

// x -> 1-x substitution: the term on S expands to
// sum over T <= S of (-1)^|T| x_T.
MultilinearPoly complement_substitution(const MultilinearPoly& f) {
    std::size_t cost = 0;
    for (const auto& [vars, c] : f.terms()) {
        cost += std::size_t(1) << popcount(vars);
        if (cost > 100'000'000)
            throw budget_error("complement substitution: expansion too large");
    }
    MultilinearPoly out(f.n());
    for (const auto& [vars, c] : f.terms()) {
        Mask t = vars;
        while (true) {
            out.add_term(t, popcount(t) % 2 == 0 ? c : -c);
            if (t == 0) break;
            t = (t - 1) & vars;
        }
    }
    return out;
}

} // namespace

std::vector<MultilinearPoly> lefschetz_components(const MultilinearPoly& q) {
    int n = q.n();
    if (q.is_zero()) return {MultilinearPoly(n)};
    int m = homogeneous_degree(q);
    if (2 * m > n)
        throw std::invalid_argument("lefschetz_components: degree must be <= n/2");
    if (m == 0) return {q};
    // q = sum over j of raise^(m-j) h_j.  Applying lower_delta and using
    // lower(raise^t h) = t(n - 2j - t + 1) raise^(t-1) h on harmonic h of
    // degree j gives the components of lower_delta(q) scaled by
    // c_j = (m-j)(n-m-j+1), all positive for m <= n/2.
    std::vector<MultilinearPoly> lower_parts = lefschetz_components(lower_delta(q));
    while (static_cast<int>(lower_parts.size()) < m)
        lower_parts.push_back(MultilinearPoly(n));
    std::vector<MultilinearPoly> out;
    out.reserve(m + 1);
    MultilinearPoly top = q;
    for (int j = 0; j < m; ++j) {
        Rational c(((long)m - j) * ((long)n - m - j + 1));
        MultilinearPoly hj = (1 / c) * lower_parts[j];
        out.push_back(hj);
        for (int t = 0; t < m - j; ++t) hj = raise_delta(hj);
        top = top - hj;
    }
    out.push_back(top);
    return out;
}

std::pair<MultilinearPoly, MultilinearPoly> lefschetz_split(const MultilinearPoly& q) {
    int n = q.n();
    if (q.is_zero()) return {MultilinearPoly(n), MultilinearPoly(n)};
    int d = homogeneous_degree(q);
    if (d < 1 || 2 * d > n)
        throw std::invalid_argument("lefschetz_split: need homogeneous degree in [1, n/2]");
    std::vector<MultilinearPoly> parts = lefschetz_components(q);
    MultilinearPoly r(n);
    for (int j = 0; j < d; ++j) {
        MultilinearPoly lifted = parts[j];
        for (int t = 0; t < d - 1 - j; ++t) lifted = raise_delta(lifted);
        r = r + lifted;
    }
    return {parts[d], r};
}

MultilinearPoly harmonic_projection(const MultilinearPoly& f, const SliceSpec& slice) {
    if (f.n() != slice.n)
        throw std::invalid_argument("harmonic_projection: dimension mismatch");
    int n = slice.n;
    int k = slice.k;
    if (2 * k > n) {
        // Work on the complementary slice through x -> 1-x, which preserves
        // harmonicity and degree and maps slice k to slice n-k.
        MultilinearPoly g = complement_substitution(f);
        MultilinearPoly h = harmonic_projection(g, SliceSpec(n, n - k));
        return complement_substitution(h);
    }
    // Monomials of degree > k vanish on the slice.
    MultilinearPoly work(n);
    for (const auto& [vars, c] : f.terms())
        if (popcount(vars) <= k) work.add_term(vars, c);
    MultilinearPoly result(n);
    for (int d = work.degree().value_or(0); d >= 1; --d) {
        MultilinearPoly top = homogeneous_part(work, d);
        if (top.is_zero()) continue;
        auto [h, r] = lefschetz_split(top);
        result = result + h;
        // On the slice, raise_delta(r) = (k-d+1) r for degree d-1 terms.
        work = (work - top) + (Rational(k - d + 1) * r);
    }
    return result + work;
}

MultilinearPoly project_values(const SliceValues& values, const SliceSpec& slice) {
    int n = slice.n;
    int k = slice.k;
    Integer expected = binomial(n, k);
    if (Integer((long)values.size()) != expected)
        throw std::invalid_argument("project_values: values must cover the whole slice");
    for (const auto& [point, v] : values) {
        if (popcount(point) != k || (point >> n) != 0)
            throw std::invalid_argument("project_values: point not on the slice");
    }
    Rational inv_count(1, expected);
    inv_count.canonicalize();
    ExchangeableMeasure nu = ExchangeableMeasure::slice_uniform(n, k);
    MultilinearPoly out(n);
    for (int d = 0; d <= slice.max_degree(); ++d) {
        const std::vector<MultilinearPoly>& basis = gt_basis(n, d);
        std::vector<AdmissibleSet> sets = gt_admissible_sets(n, d);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            Rational dot = 0;
            for (const auto& [point, v] : values) {
                if (v == 0) continue;
                dot += v * evaluate(basis[b], CubePoint{n, point});
            }
            if (dot == 0) continue;
            dot *= inv_count;
            Rational coeff = dot / gt_norm_squared(sets[b], nu);
            out = out + (coeff * basis[b]);
        }
    }
    return out;
}

int slice_degree(const SliceValues& values, const SliceSpec& slice) {
    return project_values(values, slice).degree().value_or(0);
}

std::vector<AdmissibleSet> gt_admissible_sets(int n, int d) {
    if (d < 0 || 2 * d > n)
        throw std::invalid_argument("gt_admissible_sets: need 0 <= 2d <= n");
    std::vector<AdmissibleSet> out;
    std::vector<int> current(d);
    // Depth-first over b_1 < ... < b_d with b_i >= 2i.
    auto recurse = [&](auto&& self, int i) -> void {
        if (i == d) {
            out.push_back(AdmissibleSet{current});
            return;
        }
        int low = i == 0 ? 2 : current[i - 1] + 1;
        if (low < 2 * (i + 1)) low = 2 * (i + 1);
        for (int b = low; b <= n - (d - i - 1); ++b) {
            current[i] = b;
            self(self, i + 1);
        }
    };
    recurse(recurse, 0);
    return out;
}

namespace {

void check_admissible(const AdmissibleSet& B, int n) {
    int prev = 0;
    int i = 0;
    for (int b : B.b) {
        ++i;
        if (b <= prev || b > n || b < 2 * i)
            throw std::invalid_argument("admissible set violates the ballot condition");
        prev = b;
    }
}

} // namespace

MultilinearPoly gt_basis_element(const AdmissibleSet& B, int n) {
    check_admissible(B, n);
    int d = static_cast<int>(B.b.size());
    MultilinearPoly out(n);
    if (d == 0) {
        out.add_term(0, 1);
        return out;
    }
    Mask in_b = 0;
    for (int b : B.b) in_b |= Mask(1) << (b - 1);
    std::vector<int> a(d);
    Mask used = 0;
    // All completions a_i < b_i with a_1,...,a_d,b_1,...,b_d distinct.
    auto recurse = [&](auto&& self, int i, const MultilinearPoly& partial) -> void {
        if (i == d) {
            out = out + partial;
            return;
        }
        for (int cand = 1; cand < B.b[i]; ++cand) {
            Mask bit = Mask(1) << (cand - 1);
            if ((in_b | used) & bit) continue;
            used |= bit;
            MultilinearPoly factor(n);
            factor.add_term(bit, 1);
            factor.add_term(Mask(1) << (B.b[i] - 1), -1);
            self(self, i + 1, multiply(partial, factor, false));
            used ^= bit;
        }
    };
    recurse(recurse, 0, MultilinearPoly::constant(n, 1));
    return out;
}

Rational gt_norm_squared(const AdmissibleSet& B, const ExchangeableMeasure& measure) {
    check_admissible(B, measure.n());
    int d = static_cast<int>(B.b.size());
    Rational out = basic_norm(measure, d);
    for (int i = 0; i < d; ++i) out *= Rational(binomial(B.b[i] - 2 * i, 2));
    return out;
}

MultilinearPoly yjm_apply(int m, const MultilinearPoly& f) {
    int n = f.n();
    if (m < 1 || m > n) throw std::invalid_argument("yjm_apply: need 1 <= m <= n");
    MultilinearPoly out(n);
    std::vector<int> pi(n);
    for (int i = 0; i < m; ++i) {
        for (int l = i + 1; l < m; ++l) {
            for (int t = 0; t < n; ++t) pi[t] = t;
            pi[i] = l;
            pi[l] = i;
            out = out + permute(f, pi);
        }
    }
    return out;
}

const std::vector<MultilinearPoly>& gt_basis(int n, int d) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<MultilinearPoly>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(n, d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<MultilinearPoly> basis;
    for (const AdmissibleSet& B : gt_admissible_sets(n, d))
        basis.push_back(gt_basis_element(B, n));
    return cache.emplace(key, std::move(basis)).first->second;
}

} // namespace slices
