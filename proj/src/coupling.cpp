#include "slices/coupling.hpp"

#include "slices/comb.hpp"
#include "slices/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace slices {

Mask ChainSample::prefix(int s) const {
    if (s < 0 || s > n) throw std::invalid_argument("prefix: need 0 <= s <= n");
    Mask out = 0;
    for (int i = 0; i < s; ++i) out |= Mask(1) << order[i];
    return out;
}

ChainSample sample_chain(int n, Rng& rng) {
    ChainSample out;
    out.n = n;
    out.order.resize(n);
    for (int i = 0; i < n; ++i) out.order[i] = i;
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(out.order[i], out.order[j]);
    }
    return out;
}

Rational martingale_u(const MultilinearPoly& f, Mask a, Mask b) {
    int n = f.n();
    int s = popcount(a);
    // sum over i not in a of df/dx_i at a = sum of c_T over terms with
    // exactly one variable outside a.
    Rational up_derivatives = 0;
    Rational fa = 0, fb = 0;
    for (const auto& [vars, c] : f.terms()) {
        if ((vars & a) == vars) fa += c;
        if ((vars & b) == vars) fb += c;
        if (popcount(vars & ~a) == 1) up_derivatives += c;
    }
    return fb - fa - up_derivatives / Rational(n - s);
}

Rational martingale_d(const MultilinearPoly& f, Mask a, Mask b) {
    int s = popcount(b);
    // sum over i in b of df/dx_i at b = sum of c_T |T| over terms inside b.
    Rational down_derivatives = 0;
    Rational fa = 0, fb = 0;
    for (const auto& [vars, c] : f.terms()) {
        if ((vars & a) == vars) fa += c;
        if ((vars & b) == vars) {
            fb += c;
            down_derivatives += c * popcount(vars);
        }
    }
    return fa - fb + down_derivatives / Rational(s);
}

MartingaleTerms martingale_terms(const MultilinearPoly& f,
                                 const ChainSample& chain, int s) {
    if (!is_harmonic(f))
        throw std::invalid_argument("martingale_terms: input must be harmonic");
    if (f.n() != chain.n)
        throw std::invalid_argument("martingale_terms: dimension mismatch");
    int n = chain.n;
    if (s < 1 || s > n - 1)
        throw std::invalid_argument("martingale_terms: need 1 <= s <= n-1");
    MartingaleTerms out;
    out.s = s;
    Mask cur = chain.prefix(s);
    out.U = martingale_u(f, cur, chain.prefix(s + 1));
    out.D = martingale_d(f, chain.prefix(s - 1), cur);
    out.C = Rational(n - s) * out.U - Rational(s) * out.D;
    return out;
}

Domain Domain::slice(int k) {
    Domain d;
    d.kind = Kind::Slice;
    d.k = k;
    return d;
}

Domain Domain::cube(const Rational& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("Domain::cube: need 0 <= p <= 1");
    Domain d;
    d.kind = Kind::Cube;
    d.p = p;
    return d;
}

namespace {

// f compressed onto the coordinates it uses; values indexed by the compact
// pattern mask via the zeta transform.
std::vector<Rational> values_on_used_patterns(const MultilinearPoly& f, Mask used,
                                              int m) {
    std::vector<int> where(f.n(), -1);
    int next = 0;
    for (int i = 0; i < f.n(); ++i)
        if (used & (Mask(1) << i)) where[i] = next++;
    std::vector<Rational> vals(std::size_t(1) << m, Rational(0));
    for (const auto& [vars, c] : f.terms()) {
        Mask compact = 0;
        Mask rest = vars;
        while (rest) {
            Mask bit = rest & (~rest + 1);
            compact |= Mask(1) << where[__builtin_ctzll(bit)];
            rest ^= bit;
        }
        vals[compact] += c;
    }
    for (int i = 0; i < m; ++i) {
        Mask bit = Mask(1) << i;
        for (Mask x = 0; x < vals.size(); ++x)
            if (x & bit) vals[x] += vals[x ^ bit];
    }
    return vals;
}

} // namespace

RatPmf exact_distribution(const MultilinearPoly& f, const Domain& domain,
                          std::size_t budget) {
    int n = f.n();
    Mask used = 0;
    for (const auto& [vars, c] : f.terms()) used |= vars;
    int m = popcount(used);

    std::map<Rational, Rational> weights;
    if (m <= 26 && (std::size_t(1) << m) <= budget) {
        std::vector<Rational> vals = values_on_used_patterns(f, used, m);
        std::vector<Rational> level_weight;
        if (domain.kind == Domain::Kind::Slice) {
            int k = domain.k;
            if (k < 0 || k > n)
                throw std::invalid_argument("exact_distribution: need 0 <= k <= n");
            Integer total = binomial(n, k);
            for (int l = 0; l <= m; ++l) {
                Rational w(binomial(n - m, k - l), total);
                w.canonicalize();
                level_weight.push_back(w);
            }
        } else {
            Rational q = 1 - domain.p;
            for (int l = 0; l <= m; ++l)
                level_weight.push_back(pow_rational(domain.p, l) *
                                       pow_rational(q, m - l));
        }
        for (Mask x = 0; x < vals.size(); ++x) {
            const Rational& w = level_weight[popcount(x)];
            if (w != 0) weights[vals[x]] += w;
        }
        return make_rat_pmf(weights);
    }

    if (domain.kind == Domain::Kind::Slice) {
        int k = domain.k;
        Integer points = binomial(n, k);
        if (points <= Integer((long)budget)) {
            Rational each(1, points);
            each.canonicalize();
            Mask x = (Mask(1) << k) - 1;
            Mask limit = Mask(1) << n;
            while (x < limit) {
                weights[evaluate(f, CubePoint{n, x})] += each;
                if (x == 0) break;
                Mask c = x & (~x + 1);
                Mask r = x + c;
                x = (((r ^ x) >> 2) / c) | r;
            }
            return make_rat_pmf(weights);
        }
    }
    throw budget_error("exact_distribution: enumeration budget exceeded");
}

namespace {

void for_each_subset_of(Mask super, int t,
                        const std::function<void(Mask)>& fn) {
    std::vector<int> bits;
    Mask rest = super;
    while (rest) {
        Mask bit = rest & (~rest + 1);
        bits.push_back(__builtin_ctzll(bit));
        rest ^= bit;
    }
    int m = static_cast<int>(bits.size());
    if (t == 0) {
        fn(0);
        return;
    }
    Mask idx = (Mask(1) << t) - 1;
    Mask limit = Mask(1) << m;
    while (idx < limit) {
        Mask out = 0;
        Mask scan = idx;
        while (scan) {
            Mask bit = scan & (~scan + 1);
            out |= Mask(1) << bits[__builtin_ctzll(bit)];
            scan ^= bit;
        }
        fn(out);
        Mask c = idx & (~idx + 1);
        Mask r = idx + c;
        idx = (((r ^ idx) >> 2) / c) | r;
    }
}

} // namespace

void enumerate_nested(int n, const std::vector<int>& levels,
                      const std::function<void(const std::vector<Mask>&)>& fn,
                      std::size_t budget) {
    if (levels.empty()) return;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 0 || levels[i] > n)
            throw std::invalid_argument("enumerate_nested: level out of range");
        if (i > 0 && levels[i] <= levels[i - 1])
            throw std::invalid_argument("enumerate_nested: levels must increase");
    }
    Integer count = binomial(n, levels.back());
    for (std::size_t i = levels.size() - 1; i > 0; --i)
        count *= binomial(levels[i], levels[i - 1]);
    if (count > Integer((long)budget))
        throw budget_error("enumerate_nested: tuple budget exceeded");

    std::size_t r = levels.size();
    std::vector<Mask> current(r);
    auto recurse = [&](auto&& self, std::size_t i) -> void {
        if (i == 0) {
            fn(current);
            return;
        }
        Mask super = i == r ? (Mask(1) << n) - 1 : current[i];
        for_each_subset_of(super, levels[i - 1], [&](Mask sub) {
            current[i - 1] = sub;
            self(self, i - 1);
        });
    };
    recurse(recurse, r);
}

Rational coupled_second_moment(const MultilinearPoly& f, int k, int ell) {
    int n = f.n();
    if (k < 0 || ell < k || ell > n)
        throw std::invalid_argument("coupled_second_moment: need 0 <= k <= l <= n");
    // E[x_S(X(a)) x_T(X(b))] for a <= b factors through the chain:
    // Pr[S u T <= X(b)] * Pr[S <= X(a) | S u T <= X(b)].
    auto pair_moment = [&](int a, int b) {
        Rational total = 0;
        for (const auto& [s_vars, cs] : f.terms()) {
            int s = popcount(s_vars);
            for (const auto& [t_vars, ct] : f.terms()) {
                int u = popcount(s_vars | t_vars);
                if (u > b || s > a) continue;
                Rational w = falling_ratio(b, n, u) * falling_ratio(a, b, s);
                total += cs * ct * w;
            }
        }
        return total;
    };
    return pair_moment(k, k) - 2 * pair_moment(k, ell) + pair_moment(ell, ell);
}

Rational coupled_second_moment_by_enumeration(const MultilinearPoly& f, int k,
                                              int ell, std::size_t budget) {
    int n = f.n();
    if (k < 0 || ell < k || ell > n)
        throw std::invalid_argument("coupled_second_moment: need 0 <= k <= l <= n");
    if (k == ell) return 0;
    Rational sum = 0;
    Integer count = 0;
    enumerate_nested(
        n, {k, ell},
        [&](const std::vector<Mask>& sets) {
            Rational diff = evaluate(f, CubePoint{n, sets[0]}) -
                            evaluate(f, CubePoint{n, sets[1]});
            sum += diff * diff;
            ++count;
        },
        budget);
    Rational out = sum / Rational(count);
    out.canonicalize();
    return out;
}

MonteCarloEstimate coupled_second_moment_mc(const MultilinearPoly& f, int k,
                                            int ell, std::uint64_t samples,
                                            std::uint64_t seed, int threads) {
    int n = f.n();
    if (k < 0 || ell < k || ell > n)
        throw std::invalid_argument("coupled_second_moment: need 0 <= k <= l <= n");
    if (threads < 1) throw std::invalid_argument("coupled_second_moment: threads >= 1");
    if (samples < 1) throw std::invalid_argument("coupled_second_moment: samples >= 1");
    FloatPoly ff = to_float(f);
    std::uint64_t workers = std::min<std::uint64_t>(threads, samples);
    std::vector<double> sums(workers, 0), sq_sums(workers, 0);
    auto run = [&](std::uint64_t w) {
        std::uint64_t share = samples / workers + (w < samples % workers ? 1 : 0);
        Rng rng = derive_worker_rng(seed, w);
        double s1 = 0, s2 = 0;
        for (std::uint64_t t = 0; t < share; ++t) {
            ChainSample chain = sample_chain(n, rng);
            double diff = evaluate(ff, CubePoint{n, chain.prefix(k)}) -
                          evaluate(ff, CubePoint{n, chain.prefix(ell)});
            double v = diff * diff;
            s1 += v;
            s2 += v * v;
        }
        sums[w] = s1;
        sq_sums[w] = s2;
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }
    double s1 = 0, s2 = 0;
    for (std::uint64_t w = 0; w < workers; ++w) {
        s1 += sums[w];
        s2 += sq_sums[w];
    }
    MonteCarloEstimate out;
    out.samples = samples;
    double nn = static_cast<double>(samples);
    out.mean = s1 / nn;
    double var = samples > 1 ? (s2 - s1 * s1 / nn) / (nn - 1) : 0.0;
    out.std_error = std::sqrt(std::max(var, 0.0) / nn);
    return out;
}

Rational projected_tv(int n, int k, const Rational& p, int m) {
    if (m < 0 || m > n) throw std::invalid_argument("projected_tv: need 0 <= m <= n");
    if (k < 0 || k > n) throw std::invalid_argument("projected_tv: need 0 <= k <= n");
    if (p < 0 || p > 1) throw std::invalid_argument("projected_tv: need 0 <= p <= 1");
    Integer total = binomial(n, k);
    Rational q = 1 - p;
    Rational sum = 0;
    for (int l = 0; l <= m; ++l) {
        Rational slice_w(binomial(n - m, k - l), total);
        slice_w.canonicalize();
        Rational cube_w = pow_rational(p, l) * pow_rational(q, m - l);
        Rational gap = slice_w - cube_w;
        if (gap < 0) gap = -gap;
        sum += Rational(binomial(m, l)) * gap;
    }
    return sum / 2;
}

namespace {

// Values of a Boolean f over the whole cube, validated to be 0/1.
std::vector<int> boolean_cube_table(const MultilinearPoly& f) {
    std::vector<Rational> vals = evaluate_on_cube(f);
    std::vector<int> out(vals.size());
    for (std::size_t x = 0; x < vals.size(); ++x) {
        if (vals[x] == 0) out[x] = 0;
        else if (vals[x] == 1) out[x] = 1;
        else throw std::invalid_argument("expected a Boolean (0/1-valued) function");
    }
    return out;
}

} // namespace

Rational total_influence(const MultilinearPoly& f, const Rational& p) {
    int n = f.n();
    std::vector<int> table = boolean_cube_table(f);
    Rational q = 1 - p;
    std::vector<Rational> weight_of_level(n + 1);
    for (int l = 0; l <= n; ++l)
        weight_of_level[l] = pow_rational(p, l) * pow_rational(q, n - l);
    Rational sum = 0;
    for (Mask x = 0; x < table.size(); ++x) {
        int cnt = 0;
        for (int i = 0; i < n; ++i)
            if (table[x] != table[x ^ (Mask(1) << i)]) ++cnt;
        if (cnt) sum += weight_of_level[popcount(x)] * cnt;
    }
    return p * q * sum;
}

Rational total_influence_chain_form(const MultilinearPoly& f, const Rational& p) {
    int n = f.n();
    std::vector<int> table = boolean_cube_table(f);
    // flips[s] counts directed chain steps X(s) -> X(s+1) that change f;
    // each edge (x, x | bit) is one such step with s = |x|.
    std::vector<Integer> flips(n, 0), pairs(n, 0);
    for (Mask x = 0; x < table.size(); ++x) {
        int s = popcount(x);
        for (int i = 0; i < n; ++i) {
            Mask bit = Mask(1) << i;
            if (x & bit) continue;
            ++pairs[s];
            if (table[x] != table[x | bit]) ++flips[s];
        }
    }
    Rational sum = 0;
    for (int s = 0; s < n; ++s) {
        if (flips[s] == 0) continue;
        Rational flip_prob(flips[s], pairs[s]);
        flip_prob.canonicalize();
        sum += binomial_pmf(n - 1, p, s) * flip_prob;
    }
    return p * (1 - p) * Rational(n) * sum;
}

std::pair<Rational, Rational> hybrid_bound(const MultilinearPoly& f,
                                           const Rational& p,
                                           std::size_t budget) {
    int n = f.n();
    Rational np = Rational(n) * p;
    if (np.get_den() != 1)
        throw std::invalid_argument("hybrid_bound: np must be an integer");
    int k0 = static_cast<int>(np.get_num().get_si());
    std::vector<int> table = boolean_cube_table(f);

    Rational lhs = 0;
    for (int s = 0; s <= n; ++s) {
        if (s == k0) continue;
        Rational weight = binomial_pmf(n, p, s);
        if (weight == 0) continue;
        int lo = std::min(s, k0), hi = std::max(s, k0);
        Integer count = 0, differing = 0;
        enumerate_nested(
            n, {lo, hi},
            [&](const std::vector<Mask>& sets) {
                ++count;
                if (table[sets[0]] != table[sets[1]]) ++differing;
            },
            budget);
        Rational flip(differing, count);
        flip.canonicalize();
        lhs += weight * flip;
    }

    std::vector<Integer> flips(n, 0), pairs(n, 0);
    for (Mask x = 0; x < table.size(); ++x) {
        int s = popcount(x);
        for (int i = 0; i < n; ++i) {
            Mask bit = Mask(1) << i;
            if (x & bit) continue;
            ++pairs[s];
            if (table[x] != table[x | bit]) ++flips[s];
        }
    }
    Rational rhs = 0;
    for (int s = 0; s < n; ++s) {
        if (flips[s] == 0) continue;
        // Tail of S ~ Bin(n, p) on the far side of the step.
        Rational tail = 0;
        if (s >= k0)
            for (int t = s + 1; t <= n; ++t) tail += binomial_pmf(n, p, t);
        else
            for (int t = 0; t <= s; ++t) tail += binomial_pmf(n, p, t);
        Rational flip_prob(flips[s], pairs[s]);
        flip_prob.canonicalize();
        rhs += tail * flip_prob;
    }
    return {lhs, rhs};
}

std::vector<std::vector<Rational>> empirical_profile(const MultilinearPoly& f,
                                                     const SliceSystem& system,
                                                     std::uint64_t samples,
                                                     Rng& rng) {
    if (f.n() != system.n)
        throw std::invalid_argument("empirical_profile: dimension mismatch");
    std::vector<std::vector<Rational>> rows;
    rows.reserve(samples);
    for (std::uint64_t t = 0; t < samples; ++t) {
        ChainSample chain = sample_chain(system.n, rng);
        std::vector<Rational> row;
        row.reserve(system.levels.size());
        for (int level : system.levels)
            row.push_back(evaluate(f, CubePoint{system.n, chain.prefix(level)}));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace slices
