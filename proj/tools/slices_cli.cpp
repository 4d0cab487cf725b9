// Experiment runner for the slices library.
//
// Every subcommand writes one machine-readable document (JSON by default,
// CSV for flat tables) to stdout or to --out.  Numeric fields are exact
// "num/den" strings where the computation is exact and 12-significant-digit
// decimals otherwise, so reruns with the same configuration are
// byte-identical.  Diagnostics and timing go to stderr only.
//
// Exit codes: 0 success, 2 invalid input, 3 point budget exceeded.

#include "slices/blekherman.hpp"
#include "slices/comb.hpp"
#include "slices/coupling.hpp"
#include "slices/error.hpp"
#include "slices/fspec.hpp"
#include "slices/harmonic.hpp"
#include "slices/measures.hpp"
#include "slices/pmf.hpp"
#include "slices/poly.hpp"
#include "slices/rational.hpp"
#include "slices/rng.hpp"
#include "slices/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace slices;

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

int parse_int(const std::string& s) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("expected an integer, got \"" + s + "\"");
    }
    if (used != s.size() || v < INT_MIN || v > INT_MAX)
        throw std::invalid_argument("expected an integer, got \"" + s + "\"");
    return static_cast<int>(v);
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const std::string& part : split(s, ','))
        out.push_back(parse_int(part));
    if (out.empty())
        throw std::invalid_argument("expected a comma-separated integer list");
    return out;
}

Rational parse_bias(const std::string& s) {
    Rational p = parse_rational(s);
    if (!(p > 0) || !(p < 1))
        throw std::invalid_argument("bias p must lie strictly between 0 and 1, got " + s);
    return p;
}

// The slice paired with bias p is k = p*n; it must land on an integer level.
int slice_level(int n, const Rational& p) {
    Rational k = p * n;
    if (k.get_den() != 1)
        throw std::invalid_argument("p*n must be an integer (n=" + std::to_string(n) +
                                    ", p=" + format_rational(p) + ")");
    return static_cast<int>(k.get_num().get_si());
}

ExchangeableMeasure parse_measure(int n, const std::string& s) {
    if (s.rfind("nu:", 0) == 0) {
        int k = parse_int(s.substr(3));
        return ExchangeableMeasure::slice_uniform(n, k);
    }
    if (s.rfind("mu:", 0) == 0)
        return ExchangeableMeasure::product_bernoulli(n, parse_bias(s.substr(3)));
    if (s.rfind("weights:", 0) == 0) {
        std::vector<std::string> parts = split(s.substr(8), ',');
        if (static_cast<int>(parts.size()) != n + 1)
            throw std::invalid_argument("weights: needs n+1 entries for levels 0..n, got " +
                                        std::to_string(parts.size()));
        std::vector<Rational> w;
        Rational total = 0;
        for (const std::string& part : parts) {
            Rational q = parse_rational(part);
            if (q < 0)
                throw std::invalid_argument("level weights must be nonnegative");
            w.push_back(q);
            total += q;
        }
        if (total == 0)
            throw std::invalid_argument("level weights must not all be zero");
        for (Rational& q : w)
            q /= total;
        return ExchangeableMeasure::level_weights(n, w);
    }
    throw std::invalid_argument("unknown measure spec \"" + s +
                                "\" (expected nu:k, mu:num/den, or weights:w0,...,wn)");
}

struct Globals {
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out;
    std::string format;
};

std::string resolve_format(const Globals& g, const char* preferred, bool csv_ok, bool json_ok) {
    std::string f = g.format.empty() ? preferred : g.format;
    if (f != "json" && f != "csv")
        throw std::invalid_argument("format must be json or csv, got \"" + f + "\"");
    if (f == "csv" && !csv_ok)
        throw std::invalid_argument("this subcommand emits nested output; use --format json");
    if (f == "json" && !json_ok)
        throw std::invalid_argument("this subcommand emits csv only");
    return f;
}

void require_single_thread(const Globals& g, const std::string& what) {
    if (g.threads != 1)
        throw std::invalid_argument(what + " is exact and single-threaded; "
                                    "--threads applies to Monte Carlo runs");
}

void write_output(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream file(g.out, std::ios::binary);
    if (!file)
        throw std::invalid_argument("cannot open output path \"" + g.out + "\"");
    file << text;
    if (!file)
        throw std::invalid_argument("failed writing output path \"" + g.out + "\"");
}

void write_path(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::invalid_argument("cannot open output path \"" + path + "\"");
    file << text;
    if (!file)
        throw std::invalid_argument("failed writing output path \"" + path + "\"");
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string csv_cell(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos)
        return v;
    std::string quoted = "\"";
    for (char c : v) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string table_to_csv(const Table& t) {
    std::ostringstream out;
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? "," : "") << csv_cell(t.columns[i]);
    out << '\n';
    for (const std::vector<std::string>& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << csv_cell(row[i]);
        out << '\n';
    }
    return out.str();
}

Json table_to_json(const std::string& command, const Table& t) {
    Json doc;
    doc["schema_version"] = 1;
    doc["command"] = command;
    Json rows = Json::array();
    for (const std::vector<std::string>& row : t.rows) {
        Json obj;
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            obj[t.columns[i]] = row[i];
        rows.push_back(obj);
    }
    doc["rows"] = rows;
    return doc;
}

void emit_table(const Globals& g, const std::string& fmt, const std::string& command,
                const Table& t) {
    if (fmt == "json")
        write_output(g, table_to_json(command, t).dump(2) + "\n");
    else
        write_output(g, table_to_csv(t));
}

// Splits a sample budget across workers; worker w always gets the same count.
std::vector<std::uint64_t> split_samples(std::uint64_t samples, int threads) {
    std::vector<std::uint64_t> counts(threads, samples / threads);
    for (std::uint64_t w = 0; w < samples % threads; ++w)
        ++counts[w];
    return counts;
}

// Runs one body per worker on its own derived RNG stream and collects the
// results in worker order, so the merged output is independent of scheduling.
// `stream` is a per-run counter that keeps successive parallel phases on
// disjoint RNG streams.
template <typename Part>
std::vector<Part> run_workers(const Globals& g, std::uint64_t samples, std::uint64_t& stream,
                              const std::function<void(Rng&, std::uint64_t, Part&)>& body) {
    std::vector<std::uint64_t> counts = split_samples(samples, g.threads);
    std::vector<Part> parts(g.threads);
    std::vector<std::exception_ptr> errors(g.threads);
    std::vector<std::thread> pool;
    for (int w = 0; w < g.threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                Rng rng = derive_worker_rng(g.seed, stream + static_cast<std::uint64_t>(w));
                body(rng, counts[w], parts[w]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool)
        th.join();
    stream += static_cast<std::uint64_t>(g.threads);
    for (const std::exception_ptr& e : errors) {
        if (e)
            std::rethrow_exception(e);
    }
    return parts;
}

using Hist = std::map<Rational, std::uint64_t>;

Hist merge_hists(const std::vector<Hist>& parts) {
    Hist total;
    for (const Hist& part : parts) {
        for (const auto& [value, count] : part)
            total[value] += count;
    }
    return total;
}

// Folds an exact-valued histogram into a float pmf on the scale sigma.
Pmf hist_to_pmf(const Hist& hist, std::uint64_t samples, double sigma) {
    std::map<double, double> acc;
    for (const auto& [value, count] : hist)
        acc[to_double(value) / sigma] += static_cast<double>(count) / static_cast<double>(samples);
    return make_pmf(acc);
}

// ---------------------------------------------------------------------------
// invariance: Levy and KS distance between the law of f on slice k = p*n and
// on the p-biased cube, both on the slice standard-deviation scale.

int run_invariance(const Globals& g, const std::string& ns_str, const std::string& p_str,
                   const std::string& fspec, std::uint64_t samples) {
    std::string fmt = resolve_format(g, "json", true, true);
    if (samples == 0)
        require_single_thread(g, "invariance without --samples");
    Rational p = parse_bias(p_str);

    struct Item {
        int n = 0;
        int k = 0;
        int d = 0;
        MultilinearPoly f{1};
        Rational var;
    };
    std::vector<Item> items;
    for (int n : parse_int_list(ns_str)) {
        Item it;
        it.n = n;
        it.k = slice_level(n, p);
        it.f = parse_fspec(n, fspec);
        if (!is_harmonic(it.f))
            throw std::invalid_argument("invariance requires a harmonic f-spec; \"" + fspec +
                                        "\" is not harmonic at n=" + std::to_string(n));
        it.d = it.f.degree().value_or(0);
        it.var = variance(it.f, ExchangeableMeasure::slice_uniform(n, it.k));
        if (it.var == 0 && it.d > 0)
            throw std::invalid_argument("f-spec has zero variance on slice k=" +
                                        std::to_string(it.k) + " at n=" + std::to_string(n));
        items.push_back(std::move(it));
    }

    Table t;
    t.columns = {"n", "d", "levy", "cdf_dist"};
    std::uint64_t stream = 0;
    for (const Item& it : items) {
        std::string levy_s, cdf_s;
        if (samples == 0) {
            RatPmf nu = exact_distribution(it.f, Domain::slice(it.k));
            RatPmf mu = exact_distribution(it.f, Domain::cube(p));
            cdf_s = format_rational(cdf_distance(nu, mu));
            if (it.var == 0) {
                levy_s = format_rational(levy_distance(nu, mu));
            } else {
                ScaledLevy s = levy_distance_scaled(nu, mu, it.var);
                levy_s = s.exact ? format_rational(*s.exact) : fmt_double(s.approx);
            }
        } else {
            const MultilinearPoly& f = it.f;
            int n = it.n, k = it.k;
            if (!p.get_den().fits_ulong_p() || !p.get_num().fits_ulong_p())
                throw std::invalid_argument("bias denominator too large for sampling");
            std::uint64_t pn = p.get_num().get_ui(), pd = p.get_den().get_ui();
            std::vector<Hist> nu_parts = run_workers<Hist>(
                g, samples, stream, [&](Rng& rng, std::uint64_t cnt, Hist& h) {
                    for (std::uint64_t i = 0; i < cnt; ++i) {
                        ChainSample ch = sample_chain(n, rng);
                        ++h[evaluate(f, CubePoint{n, ch.prefix(k)})];
                    }
                });
            std::vector<Hist> mu_parts = run_workers<Hist>(
                g, samples, stream, [&](Rng& rng, std::uint64_t cnt, Hist& h) {
                    for (std::uint64_t i = 0; i < cnt; ++i) {
                        Mask m = 0;
                        for (int b = 0; b < n; ++b) {
                            if (rng.below(pd) < pn)
                                m |= Mask{1} << b;
                        }
                        ++h[evaluate(f, CubePoint{n, m})];
                    }
                });
            double sigma = it.var == 0 ? 1.0 : std::sqrt(to_double(it.var));
            Pmf a = hist_to_pmf(merge_hists(nu_parts), samples, sigma);
            Pmf b = hist_to_pmf(merge_hists(mu_parts), samples, sigma);
            levy_s = fmt_double(levy_distance(a, b));
            cdf_s = fmt_double(cdf_distance(a, b));
        }
        t.rows.push_back({std::to_string(it.n), std::to_string(it.d), levy_s, cdf_s});
    }
    emit_table(g, fmt, "invariance", t);
    return 0;
}

// ---------------------------------------------------------------------------
// counterexample: the degree-d basic function normalized to unit product
// norm, its slice norm, and the heuristic drop prediction
// exp(d^2 (4p(1-p) - 1) / (2p(1-p) n)).

int run_counterexample(const Globals& g, int n, const std::string& p_str, int d) {
    std::string fmt = resolve_format(g, "json", true, true);
    require_single_thread(g, "counterexample");
    Rational p = parse_bias(p_str);
    if (d < 1)
        throw std::invalid_argument("d must be at least 1");
    if (2 * d > n)
        throw std::invalid_argument("need 2d <= n so the slice carries degree d");
    int k = slice_level(n, p);

    Rational mu_b = basic_norm(ExchangeableMeasure::product_bernoulli(n, p), d);
    Rational nu_b = basic_norm(ExchangeableMeasure::slice_uniform(n, k), d);
    Rational c2 = Rational(1) / mu_b;
    Rational norm_mu = c2 * mu_b;
    Rational norm_nu = c2 * nu_b;

    double x = to_double(p);
    double q = 2 * x * (1 - x);
    double prediction = std::exp(static_cast<double>(d) * d * (2 * q - 1) / (q * n));

    Table t;
    t.columns = {"n", "p", "d", "k", "norm_mu", "norm_nu", "prediction"};
    t.rows.push_back({std::to_string(n), format_rational(p), std::to_string(d),
                      std::to_string(k), format_rational(norm_mu), format_rational(norm_nu),
                      fmt_double(prediction)});
    emit_table(g, fmt, "counterexample", t);
    return 0;
}

// ---------------------------------------------------------------------------
// tv: total variation distance between slice and cube after projecting to the
// first m coordinates.

int run_tv(const Globals& g, const std::string& ns_str, const std::string& p_str, int m) {
    std::string fmt = resolve_format(g, "json", true, true);
    require_single_thread(g, "tv");
    Rational p = parse_bias(p_str);
    Table t;
    t.columns = {"n", "k", "m", "p", "tv"};
    for (int n : parse_int_list(ns_str)) {
        int k = slice_level(n, p);
        Rational tv = projected_tv(n, k, p, m);
        t.rows.push_back({std::to_string(n), std::to_string(k), std::to_string(m),
                          format_rational(p), format_rational(tv)});
    }
    emit_table(g, fmt, "tv", t);
    return 0;
}

// ---------------------------------------------------------------------------
// influence: total influence of a Boolean f under the p-biased measure.

int run_influence(const Globals& g, int n, const std::string& p_str, const std::string& fspec) {
    std::string fmt = resolve_format(g, "json", true, true);
    require_single_thread(g, "influence");
    Rational p = parse_bias(p_str);
    MultilinearPoly f = parse_fspec(n, fspec);
    Rational inf = total_influence(f, p);
    Table t;
    t.columns = {"n", "p", "f", "influence"};
    t.rows.push_back({std::to_string(n), format_rational(p), fspec, format_rational(inf)});
    emit_table(g, fmt, "influence", t);
    return 0;
}

// ---------------------------------------------------------------------------
// profile: empirical joint profile of f along a coupled chain, one CSV row of
// slice values per sample, plus a .system.json sidecar with the chain stats.

int run_profile(const Globals& g, int n, const std::string& p_str,
                const std::string& levels_str, const std::string& fspec,
                std::uint64_t samples) {
    resolve_format(g, "csv", true, false);
    if (g.out.empty())
        throw std::invalid_argument("profile writes one row per sample; --out is required");
    if (samples == 0)
        throw std::invalid_argument("profile requires --samples >= 1");
    Rational p = parse_bias(p_str);
    std::vector<int> levels = parse_int_list(levels_str);
    SliceSystem sys = system_stats(levels, p, n);
    MultilinearPoly f = parse_fspec(n, fspec);

    std::uint64_t stream = 0;
    using Rows = std::vector<std::vector<Rational>>;
    std::vector<Rows> parts = run_workers<Rows>(
        g, samples, stream, [&](Rng& rng, std::uint64_t cnt, Rows& rows) {
            rows = empirical_profile(f, sys, cnt, rng);
        });

    Table t;
    for (int level : levels)
        t.columns.push_back("k_" + std::to_string(level));
    for (const Rows& part : parts) {
        for (const std::vector<Rational>& row : part) {
            std::vector<std::string> cells;
            for (const Rational& v : row)
                cells.push_back(format_rational(v));
            t.rows.push_back(std::move(cells));
        }
    }
    write_path(g.out, table_to_csv(t));

    Json side;
    side["schema_version"] = 1;
    Json sigma = Json::array();
    for (double s : sys.sigma)
        sigma.push_back(fmt_double(s));
    side["sigma_nodes"] = sigma;
    side["eta"] = fmt_double(sys.eta);
    side["M"] = fmt_double(sys.M);
    write_path(g.out + ".system.json", side.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// gt: dump the degree-d orthogonal basis for n variables with norms under the
// middle-slice measure, plus the Gram matrix when the basis is small.

int run_gt(const Globals& g, int n, int d) {
    resolve_format(g, "json", false, true);
    require_single_thread(g, "gt");
    if (n < 1 || n > 62)
        throw std::invalid_argument("n must lie in 1..62");
    if (d < 0 || 2 * d > n)
        throw std::invalid_argument("d must lie in 0..n/2");

    Integer count = d == 0 ? Integer(1) : binomial(n, d) - binomial(n, d - 1);
    Integer work = count;
    for (int i = 0; i < d; ++i)
        work *= 2;
    if (work > 1048576)
        throw budget_error("basis dump needs about " + work.get_str() +
                           " term evaluations; the budget is 2^20");

    const std::vector<MultilinearPoly>& basis = gt_basis(n, d);
    std::vector<AdmissibleSet> sets = gt_admissible_sets(n, d);
    int mid = n / 2;
    ExchangeableMeasure nu = ExchangeableMeasure::slice_uniform(n, mid);

    Json doc;
    doc["schema_version"] = 1;
    doc["command"] = "gt";
    doc["n"] = n;
    doc["d"] = d;
    doc["count"] = static_cast<std::int64_t>(count.get_si());
    doc["measure"] = "nu:" + std::to_string(mid);
    Json elements = Json::array();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Json el;
        Json b = Json::array();
        for (int v : sets[i].b)
            b.push_back(v);
        el["b"] = b;
        el["norm_sq"] = rational_to_json(gt_norm_squared(sets[i], nu));
        el["poly"] = poly_to_json(basis[i]);
        elements.push_back(el);
    }
    doc["elements"] = elements;
    if (count <= 64) {
        Json gram = Json::array();
        for (std::size_t i = 0; i < basis.size(); ++i) {
            Json row = Json::array();
            for (std::size_t j = 0; j < basis.size(); ++j)
                row.push_back(rational_to_json(inner_product(basis[i], basis[j], nu)));
            gram.push_back(row);
        }
        doc["gram"] = gram;
    }
    write_output(g, doc.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// poincare: the two-sided comparison n*V <= E[C^2]-like middle <= d(n-d+1)*V
// for a harmonic f under a chosen exchangeable measure.

int run_poincare(const Globals& g, int n, const std::string& fspec,
                 const std::string& measure_str) {
    std::string fmt = resolve_format(g, "json", true, true);
    require_single_thread(g, "poincare");
    MultilinearPoly f = parse_fspec(n, fspec);
    if (!is_harmonic(f))
        throw std::invalid_argument("poincare requires a harmonic f-spec; \"" + fspec +
                                    "\" is not harmonic at n=" + std::to_string(n));
    ExchangeableMeasure m = parse_measure(n, measure_str);
    PoincareTriple tri = poincare_bounds(f, m);
    Table t;
    t.columns = {"n", "d", "f", "measure", "lhs", "mid", "rhs"};
    t.rows.push_back({std::to_string(n), std::to_string(f.degree().value_or(0)), fspec,
                      measure_str, format_rational(tri.lhs), format_rational(tri.mid),
                      format_rational(tri.rhs)});
    emit_table(g, fmt, "poincare", t);
    return 0;
}

// ---------------------------------------------------------------------------
// blekherman: the expansion f = sum_i f_i S^i with harmonic coefficients, in
// the raw or standardized symmetric variable.

int run_blekherman(const Globals& g, int n, const std::string& fspec,
                   const std::string& basis_str, const std::string& p_str) {
    resolve_format(g, "json", false, true);
    require_single_thread(g, "blekherman");
    MultilinearPoly f = parse_fspec(n, fspec);

    BlekhermanExpansion ex;
    if (basis_str == "raw") {
        if (!p_str.empty())
            throw std::invalid_argument("--p applies to the standardized basis only");
        ex = blekherman_expand(f);
    } else if (basis_str == "standardized") {
        if (p_str.empty())
            throw std::invalid_argument("the standardized basis needs --p");
        ex = blekherman_expand(f, BlekhermanBasis::Standardized, parse_bias(p_str));
    } else {
        throw std::invalid_argument("basis must be raw or standardized, got \"" + basis_str +
                                    "\"");
    }

    Json doc;
    doc["schema_version"] = 1;
    doc["command"] = "blekherman";
    doc["n"] = n;
    doc["f"] = fspec;
    doc["d"] = ex.d;
    doc["basis"] = basis_str;
    if (basis_str == "standardized") {
        doc["p"] = format_rational(ex.p);
        doc["sigma_exact"] = ex.sigma_exact;
        if (ex.sigma_exact)
            doc["sigma_scale"] = format_rational(ex.sigma_scale);
    }
    Json coeffs = Json::array();
    for (const MultilinearPoly& c : ex.coeffs)
        coeffs.push_back(poly_to_json(c));
    doc["coeffs"] = coeffs;
    write_output(g, doc.dump(2) + "\n");
    return 0;
}

int fail(const char* type, const std::string& message, int code) {
    Json doc;
    doc["schema_version"] = 1;
    doc["error"] = Json{{"type", type}, {"message", message}};
    std::fprintf(stderr, "%s\n", doc.dump().c_str());
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmonic analysis experiments on slices of the Boolean cube"};
    app.require_subcommand(1);

    Globals g;
    app.add_option("--seed", g.seed, "base RNG seed for Monte Carlo subcommands");
    app.add_option("--threads", g.threads, "worker threads for Monte Carlo subcommands")
        ->check(CLI::Range(1, 64));
    app.add_option("--out", g.out, "write the result to this path instead of stdout");
    app.add_option("--format", g.format, "output format: json or csv");

    std::string inv_ns, inv_p = "1/2", inv_f = "basic:1";
    std::uint64_t inv_samples = 0;
    CLI::App* inv = app.add_subcommand(
        "invariance", "Levy/KS distance between f on the slice and on the biased cube");
    inv->fallthrough();
    inv->add_option("--n", inv_ns, "comma-separated list of n")->required();
    inv->add_option("--p", inv_p, "bias as num/den");
    inv->add_option("--f", inv_f, "harmonic f-spec");
    inv->add_option("--samples", inv_samples, "Monte Carlo samples per law (exact when omitted)")
        ->check(CLI::PositiveNumber);

    int cex_n = 0, cex_d = 0;
    std::string cex_p = "1/4";
    CLI::App* cex = app.add_subcommand(
        "counterexample", "norm drop of the unit-norm degree-d basic function on the slice");
    cex->fallthrough();
    cex->add_option("--n", cex_n, "number of variables")->required();
    cex->add_option("--p", cex_p, "bias as num/den");
    cex->add_option("--d", cex_d, "degree of the basic function")->required();

    std::string tv_ns, tv_p = "1/2";
    int tv_m = 0;
    CLI::App* tv = app.add_subcommand(
        "tv", "total variation between slice and cube projected to m coordinates");
    tv->fallthrough();
    tv->add_option("--n", tv_ns, "comma-separated list of n")->required();
    tv->add_option("--p", tv_p, "bias as num/den");
    tv->add_option("--m", tv_m, "number of projected coordinates")->required();

    int infl_n = 0;
    std::string infl_p = "1/2", infl_f;
    CLI::App* infl = app.add_subcommand(
        "influence", "total influence of a Boolean function under the biased measure");
    infl->fallthrough();
    infl->add_option("--n", infl_n, "number of variables")->required();
    infl->add_option("--p", infl_p, "bias as num/den");
    infl->add_option("--f", infl_f, "Boolean f-spec")->required();

    int prof_n = 0;
    std::string prof_p = "1/2", prof_levels, prof_f;
    std::uint64_t prof_samples = 0;
    CLI::App* prof = app.add_subcommand(
        "profile", "empirical joint values of f along a coupled chain, one CSV row per sample");
    prof->fallthrough();
    prof->add_option("--n", prof_n, "number of variables")->required();
    prof->add_option("--p", prof_p, "bias as num/den");
    prof->add_option("--levels", prof_levels, "comma-separated slice levels")->required();
    prof->add_option("--f", prof_f, "f-spec")->required();
    prof->add_option("--samples", prof_samples, "number of sampled chains")->required();

    int gt_n = 0, gt_d = 0;
    CLI::App* gt = app.add_subcommand(
        "gt", "dump the degree-d orthogonal basis with norms and a small Gram matrix");
    gt->fallthrough();
    gt->add_option("--n", gt_n, "number of variables")->required();
    gt->add_option("--d", gt_d, "harmonic degree")->required();

    int poi_n = 0;
    std::string poi_f, poi_measure;
    CLI::App* poi = app.add_subcommand(
        "poincare", "two-sided level comparison for a harmonic function");
    poi->fallthrough();
    poi->add_option("--n", poi_n, "number of variables")->required();
    poi->add_option("--f", poi_f, "harmonic f-spec")->required();
    poi->add_option("--measure", poi_measure, "nu:k, mu:num/den, or weights:w0,...,wn")
        ->required();

    int blk_n = 0;
    std::string blk_f, blk_basis = "raw", blk_p;
    CLI::App* blk = app.add_subcommand(
        "blekherman", "expand f into harmonic coefficients times symmetric powers");
    blk->fallthrough();
    blk->add_option("--n", blk_n, "number of variables")->required();
    blk->add_option("--f", blk_f, "f-spec")->required();
    blk->add_option("--basis", blk_basis, "raw or standardized");
    blk->add_option("--p", blk_p, "bias for the standardized basis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("invalid_input", std::string("argument error: ") + e.what(), 2);
    }

    auto started = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        if (*inv)
            rc = run_invariance(g, inv_ns, inv_p, inv_f, inv_samples);
        else if (*cex)
            rc = run_counterexample(g, cex_n, cex_p, cex_d);
        else if (*tv)
            rc = run_tv(g, tv_ns, tv_p, tv_m);
        else if (*infl)
            rc = run_influence(g, infl_n, infl_p, infl_f);
        else if (*prof)
            rc = run_profile(g, prof_n, prof_p, prof_levels, prof_f, prof_samples);
        else if (*gt)
            rc = run_gt(g, gt_n, gt_d);
        else if (*poi)
            rc = run_poincare(g, poi_n, poi_f, poi_measure);
        else if (*blk)
            rc = run_blekherman(g, blk_n, blk_f, blk_basis, blk_p);
    } catch (const budget_error& e) {
        rc = fail("budget_exceeded", e.what(), 3);
    } catch (const std::invalid_argument& e) {
        rc = fail("invalid_input", e.what(), 2);
    } catch (const std::exception& e) {
        rc = fail("invalid_input", e.what(), 2);
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::fprintf(stderr, "elapsed_seconds %.3f\n", elapsed);
    return rc;
}
