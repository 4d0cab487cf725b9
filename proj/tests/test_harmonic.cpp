#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "slices/comb.hpp"
#include "slices/harmonic.hpp"
#include "slices/linalg.hpp"
#include "slices/measures.hpp"

#include "test_util.hpp"

#include <map>
#include <stdexcept>

using namespace slices;
using namespace slices::testing;

namespace {

std::vector<Mask> degree_masks(int n, int d) {
    std::vector<Mask> out;
    for_each_slice_mask(n, d, [&](Mask m) { out.push_back(m); });
    return out;
}

// Independent oracle for the Lefschetz split: solve the dense linear system
// (lower_delta . raise_delta) r = lower_delta q on the degree-(d-1)
// coefficient space, then h = q - raise_delta r.  Shares no code with the
// ladder recursion used by the library.
std::pair<MultilinearPoly, MultilinearPoly> split_by_solve(
    const MultilinearPoly& q, int d) {
    int n = q.n();
    std::vector<Mask> basis = degree_masks(n, d - 1);
    std::map<Mask, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    RatMatrix a(basis.size(), RatVector(basis.size(), Rational(0)));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        MultilinearPoly image =
            lower_delta(raise_delta(MultilinearPoly::monomial(n, basis[j], 1)));
        for (const auto& [vars, c] : image.terms()) a[index.at(vars)][j] = c;
    }
    RatVector b(basis.size(), Rational(0));
    MultilinearPoly lowered = lower_delta(q);
    for (const auto& [vars, c] : lowered.terms()) b[index.at(vars)] = c;
    auto x = solve(a, b);
    REQUIRE(x.has_value());
    MultilinearPoly r(n);
    for (std::size_t i = 0; i < basis.size(); ++i) r.add_term(basis[i], (*x)[i]);
    return {q - raise_delta(r), r};
}

MultilinearPoly random_homogeneous(int n, int d, Rng& rng) {
    MultilinearPoly f(n);
    for (int t = 0; t < 6; ++t) {
        Mask vars = 0;
        while (popcount(vars) < d) vars |= Mask(1) << rng.below(n);
        f.add_term(vars, random_rational(rng));
    }
    return f;
}

} // namespace

TEST_CASE("slice spec validation") {
    CHECK_THROWS_AS(SliceSpec(5, 6), std::invalid_argument);
    CHECK_THROWS_AS(SliceSpec(5, -1), std::invalid_argument);
    CHECK(SliceSpec(7, 5).max_degree() == 2);
    CHECK(SliceSpec(7, 2).max_degree() == 2);
    CHECK(SliceSpec(8, 4).p() == Rational(1, 2));
}

TEST_CASE("lefschetz split matches the dense linear solve") {
    Rng rng(51);
    for (int n : {5, 7, 8}) {
        for (int d = 1; 2 * d <= n; ++d) {
            MultilinearPoly q = random_homogeneous(n, d, rng);
            if (q.is_zero()) continue;
            auto [h, r] = lefschetz_split(q);
            CHECK(is_harmonic(h));
            CHECK((q - (h + raise_delta(r))).is_zero());
            auto [h2, r2] = split_by_solve(q, d);
            CHECK((h - h2).is_zero());
            CHECK((r - r2).is_zero());
        }
    }
}

TEST_CASE("lefschetz split input validation") {
    MultilinearPoly mixed(4);
    mixed.add_term(0b0001, 1);
    mixed.add_term(0b0011, 1);
    CHECK_THROWS_AS(lefschetz_split(mixed), std::invalid_argument);
    MultilinearPoly deep = MultilinearPoly::monomial(4, 0b0111, 1);
    CHECK_THROWS_AS(lefschetz_split(deep), std::invalid_argument);
    auto [h, r] = lefschetz_split(MultilinearPoly(6));
    CHECK(h.is_zero());
    CHECK(r.is_zero());
}

TEST_CASE("ladder identity on harmonic generators") {
    Rng rng(52);
    int n = 9;
    for (int j = 1; j <= 3; ++j) {
        auto sets = gt_admissible_sets(n, j);
        MultilinearPoly h = gt_basis_element(sets[rng.below(sets.size())], n);
        MultilinearPoly lifted = h;
        for (int t = 1; t <= 3 && j + t <= n - j; ++t) {
            lifted = raise_delta(lifted);  // (raise)^t h
            MultilinearPoly lhs = lower_delta(lifted);
            MultilinearPoly prev(n);
            {
                MultilinearPoly again = h;
                for (int u = 1; u <= t - 1; ++u) again = raise_delta(again);
                prev = again;
            }
            Rational c(t * (n - 2 * j - t + 1));
            CHECK((lhs - c * prev).is_zero());
        }
    }
}

TEST_CASE("full ladder decomposition reconstructs the input") {
    Rng rng(53);
    int n = 8;
    for (int m = 1; m <= 4; ++m) {
        MultilinearPoly q = random_homogeneous(n, m, rng);
        auto parts = lefschetz_components(q);
        REQUIRE(parts.size() == static_cast<std::size_t>(m) + 1);
        MultilinearPoly sum(n);
        for (int j = 0; j <= m; ++j) {
            CHECK(is_harmonic(parts[j]));
            MultilinearPoly lifted = parts[j];
            for (int t = 0; t < m - j; ++t) lifted = raise_delta(lifted);
            sum = sum + lifted;
        }
        CHECK((sum - q).is_zero());
    }
}

TEST_CASE("harmonic projection agrees on the slice and is harmonic") {
    Rng rng(54);
    for (auto [n, k] : {std::pair{5, 2}, {6, 3}, {7, 5}, {6, 4}, {5, 0}, {4, 4}}) {
        SliceSpec slice(n, k);
        for (int t = 0; t < 8; ++t) {
            MultilinearPoly f = random_poly(n, std::min(n, 4), 8, rng);
            MultilinearPoly h = harmonic_projection(f, slice);
            CHECK(is_harmonic(h));
            CHECK(h.degree().value_or(0) <= slice.max_degree());
            for_each_slice_mask(n, k, [&](Mask x) {
                CHECK(evaluate(f, CubePoint{n, x}) == evaluate(h, CubePoint{n, x}));
            });
        }
    }
}

TEST_CASE("harmonic projection fixes already-harmonic inputs") {
    Rng rng(55);
    int n = 8, k = 3;
    for (int t = 0; t < 10; ++t) {
        MultilinearPoly h = random_harmonic(n, 3, rng);
        MultilinearPoly p = harmonic_projection(h, SliceSpec(n, k));
        CHECK((p - h).is_zero());
    }
}

TEST_CASE("projection coefficient of the leading monomial") {
    for (int n : {8, 12}) {
        for (int d = 1; d <= 3; ++d) {
            MultilinearPoly f =
                MultilinearPoly::monomial(n, (Mask(1) << d) - 1, 1);
            MultilinearPoly h = harmonic_projection(f, SliceSpec(n, n / 2));
            CHECK(h.coeff((Mask(1) << d) - 1) == 1 - rat(d, n - d + 1));
        }
    }
    // n=2, k=1: x1 projects to 1/2 + (x1 - x2)/2
    MultilinearPoly x1 = MultilinearPoly::monomial(2, 1, 1);
    MultilinearPoly h = harmonic_projection(x1, SliceSpec(2, 1));
    MultilinearPoly want(2);
    want.add_term(0, Rational(1, 2));
    want.add_term(0b01, Rational(1, 2));
    want.add_term(0b10, Rational(-1, 2));
    CHECK((h - want).is_zero());
}

TEST_CASE("value projection agrees with the polynomial route") {
    Rng rng(56);
    for (auto [n, k] : {std::pair{5, 2}, {6, 3}, {7, 5}}) {
        SliceSpec slice(n, k);
        for (int t = 0; t < 5; ++t) {
            MultilinearPoly f = random_poly(n, 4, 8, rng);
            SliceValues values;
            for_each_slice_mask(n, k,
                                [&](Mask x) { values[x] = evaluate(f, CubePoint{n, x}); });
            MultilinearPoly via_values = project_values(values, slice);
            MultilinearPoly via_split = harmonic_projection(f, slice);
            CHECK((via_values - via_split).is_zero());
        }
    }
}

TEST_CASE("value projection validates its input") {
    SliceSpec slice(4, 2);
    SliceValues values;
    for_each_slice_mask(4, 2, [&](Mask x) { values[x] = 1; });
    values.erase(values.begin()->first);
    CHECK_THROWS_AS(project_values(values, slice), std::invalid_argument);
    for_each_slice_mask(4, 2, [&](Mask x) { values[x] = 1; });
    values[0b0111] = 1;
    CHECK_THROWS_AS(project_values(values, slice), std::invalid_argument);
}

TEST_CASE("slice degree") {
    SliceSpec slice(6, 3);
    SliceValues values;
    for_each_slice_mask(6, 3, [&](Mask x) { values[x] = 5; });
    CHECK(slice_degree(values, slice) == 0);
    MultilinearPoly chi = gt_basis_element(AdmissibleSet{{2, 4}}, 6);
    for_each_slice_mask(6, 3,
                        [&](Mask x) { values[x] = evaluate(chi, CubePoint{6, x}); });
    CHECK(slice_degree(values, slice) == 2);
}

TEST_CASE("admissible sets match the direct filter") {
    for (int n : {6, 9}) {
        for (int d = 0; 2 * d <= n; ++d) {
            auto sets = gt_admissible_sets(n, d);
            CHECK(Integer(sets.size()) == binomial(n, d) - binomial(n, d - 1));
            // brute force: every d-subset b1<...<bd with b_i >= 2i
            std::size_t direct = 0;
            for_each_slice_mask(n, d, [&](Mask m) {
                int i = 0;
                bool ok = true;
                for (int bit = 0; bit < n; ++bit)
                    if (m & (Mask(1) << bit)) {
                        ++i;
                        if (bit + 1 < 2 * i) ok = false;
                    }
                if (ok) ++direct;
            });
            CHECK(sets.size() == direct);
        }
    }
}

TEST_CASE("basis elements: frozen small cases") {
    MultilinearPoly chi1 = gt_basis_element(AdmissibleSet{{2}}, 2);
    CHECK(to_text(chi1) == "+1/1 * x1 -1/1 * x2");

    MultilinearPoly chi24 = gt_basis_element(AdmissibleSet{{2, 4}}, 4);
    CHECK((chi24 - basic_function(4, 2)).is_zero());

    // B = {3,4}: completions (a1,a2) in {(1,2),(2,1)}
    MultilinearPoly chi34 = gt_basis_element(AdmissibleSet{{3, 4}}, 4);
    MultilinearPoly x1 = MultilinearPoly::monomial(4, 0b0001, 1);
    MultilinearPoly x2 = MultilinearPoly::monomial(4, 0b0010, 1);
    MultilinearPoly x3 = MultilinearPoly::monomial(4, 0b0100, 1);
    MultilinearPoly x4 = MultilinearPoly::monomial(4, 0b1000, 1);
    MultilinearPoly want = multiply(x1 - x3, x2 - x4, false) +
                           multiply(x2 - x3, x1 - x4, false);
    CHECK((chi34 - want).is_zero());

    CHECK_THROWS_AS(gt_basis_element(AdmissibleSet{{1}}, 4), std::invalid_argument);
    CHECK_THROWS_AS(gt_basis_element(AdmissibleSet{{2, 3}}, 4), std::invalid_argument);
    CHECK_THROWS_AS(gt_basis_element(AdmissibleSet{{2, 5}}, 4), std::invalid_argument);
}

TEST_CASE("basis elements are harmonic and homogeneous") {
    int n = 7;
    for (int d = 0; 2 * d <= n; ++d)
        for (const auto& B : gt_admissible_sets(n, d)) {
            MultilinearPoly chi = gt_basis_element(B, n);
            CHECK(is_harmonic(chi));
            if (d == 0) {
                CHECK(chi.degree() == 0);
            } else {
                CHECK(chi.degree() == d);
                CHECK((homogeneous_part(chi, d) - chi).is_zero());
            }
        }
}

TEST_CASE("orthogonality across the whole basis") {
    int n = 6;
    std::vector<ExchangeableMeasure> measures = {
        ExchangeableMeasure::slice_uniform(n, 3),
        ExchangeableMeasure::slice_uniform(n, 2),
        ExchangeableMeasure::product_bernoulli(n, Rational(2, 3)),
    };
    std::vector<MultilinearPoly> all;
    for (int d = 0; 2 * d <= n; ++d)
        for (const auto& B : gt_admissible_sets(n, d))
            all.push_back(gt_basis_element(B, n));
    for (const auto& measure : measures)
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                CHECK(inner_product(all[i], all[j], measure) == 0);
}

TEST_CASE("norm formula matches direct inner products") {
    int n = 8;
    std::vector<ExchangeableMeasure> measures = {
        ExchangeableMeasure::slice_uniform(n, 4),
        ExchangeableMeasure::slice_uniform(n, 2),
        ExchangeableMeasure::product_bernoulli(n, Rational(1, 5)),
    };
    for (int d = 0; d <= 3; ++d)
        for (const auto& B : gt_admissible_sets(n, d)) {
            MultilinearPoly chi = gt_basis_element(B, n);
            for (const auto& measure : measures)
                CHECK(gt_norm_squared(B, measure) ==
                      inner_product(chi, chi, measure));
        }
}

TEST_CASE("young-jucys-murphy eigenvalues") {
    int n = 7;
    for (int d = 1; d <= 3; ++d)
        for (const auto& B : gt_admissible_sets(n, d)) {
            MultilinearPoly chi = gt_basis_element(B, n);
            for (int m = 1; m <= n; ++m) {
                int t = 0;
                for (int b : B.b)
                    if (b <= m) ++t;
                Rational eig =
                    Rational(binomial(m, 2)) - Rational(t * (m + 1 - t));
                CHECK((yjm_apply(m, chi) - eig * chi).is_zero());
            }
        }
}

TEST_CASE("memoized basis is stable") {
    const auto& a = gt_basis(6, 2);
    const auto& b = gt_basis(6, 2);
    CHECK(&a == &b);
    CHECK(a.size() == gt_admissible_sets(6, 2).size());
}
