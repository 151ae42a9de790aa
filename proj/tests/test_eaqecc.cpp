#include <catch2/catch_amalgamated.hpp>

#include "gabhull/eaqecc.hpp"
#include "test_util.hpp"

using namespace gabhull;

TEST_CASE("prime power decomposition") {
    CHECK(detail::prime_power_decompose(2) == std::pair<u64, unsigned>{2, 1});
    CHECK(detail::prime_power_decompose(8) == std::pair<u64, unsigned>{2, 3});
    CHECK(detail::prime_power_decompose(9) == std::pair<u64, unsigned>{3, 2});
    CHECK(detail::prime_power_decompose(101) == std::pair<u64, unsigned>{101, 1});
    CHECK(detail::prime_power_decompose(1024) == std::pair<u64, unsigned>{2, 10});
    CHECK(testutil::thrown_code([] { detail::prime_power_decompose(6); }) == errc::not_prime);
    CHECK(testutil::thrown_code([] { detail::prime_power_decompose(12); }) == errc::not_prime);
    CHECK(testutil::thrown_code([] { detail::prime_power_decompose(1); }) == errc::not_prime);
}

TEST_CASE("GRS dimension threshold values") {
    // small exponent, exact arithmetic
    CHECK(grs_dimension_threshold(2, 2, 100) == 20);
    CHECK(grs_dimension_threshold(2, 0, 100) == 50);
    CHECK(grs_dimension_threshold(3, 1, 15) == 4);
    CHECK(grs_dimension_threshold(3, 2, 15) == 2);
    CHECK(grs_dimension_threshold(3, 3, 15) == 1);
    // huge exponent collapses to 1 without computing the power
    CHECK(grs_dimension_threshold(3, 40, 67) == 1);
    CHECK(grs_dimension_threshold(2, 1000000, 100) == 1);
    // boundary: p^e = m - 1 already gives 1, p^e = m - 2 gives 2
    CHECK(grs_dimension_threshold(7, 1, 8) == 1);
    CHECK(grs_dimension_threshold(7, 1, 9) == 2);
}

TEST_CASE("threshold is non-increasing in e") {
    for (u64 p : {2ull, 3ull, 5ull})
        for (unsigned m : {10u, 15u, 64u, 100u}) {
            u64 prev = grs_dimension_threshold(p, 0, m);
            for (unsigned e = 1; e < m; ++e) {
                u64 cur = grs_dimension_threshold(p, e, m);
                INFO("p=" << p << " m=" << m << " e=" << e);
                CHECK(cur <= prev);
                prev = cur;
            }
            CHECK(prev == 1);
        }
}

TEST_CASE("derived parameters: frozen instances") {
    EaqeccParams a = derive_params(100, 50, 2);
    CHECK(a.n == 100);
    CHECK(a.k_q == 48);
    CHECK(a.d == 51);
    CHECK(a.c == 48);
    CHECK(a.meets_singleton_with_equality);
    CHECK(a.regime_validated);  // 2*51 = 102 = n + 2 exactly

    EaqeccParams b = derive_params(67, 30, 27);
    CHECK(b.n == 67);
    CHECK(b.k_q == 3);
    CHECK(b.d == 38);
    CHECK(b.c == 10);
    CHECK(b.meets_singleton_with_equality);
    CHECK_FALSE(b.regime_validated);  // 76 > 69

    // hull as large as the code: ordinary (unassisted) quantum code
    EaqeccParams c = derive_params(6, 3, 3);
    CHECK(c.n == 6);
    CHECK(c.k_q == 0);
    CHECK(c.d == 4);
    CHECK(c.c == 0);
}

TEST_CASE("derive_params validates its inputs") {
    CHECK(testutil::thrown_code([] { derive_params(10, 4, 5); }) == errc::invalid_hull_dim);
    CHECK(testutil::thrown_code([] { derive_params(10, 7, 4); }) == errc::invalid_hull_dim);
    CHECK(testutil::thrown_code([] { derive_params(10, 0, 0); }) == errc::out_of_range);
    CHECK(testutil::thrown_code([] { derive_params(10, 10, 0); }) == errc::out_of_range);
    CHECK_FALSE(testutil::thrown_code([] { derive_params(10, 7, 3); }).has_value());
}

TEST_CASE("table rows: frozen instances with threshold flags") {
    EaqeccParams a = table_row(2, 100, 2, 21);
    CHECK(a.n == 100);
    CHECK(a.k_q == 19);
    CHECK(a.d == 80);
    CHECK(a.c == 77);
    CHECK(a.source.hull_dim == 2);
    CHECK(a.source.e == 2);
    CHECK(a.p == 2);
    CHECK(a.grs_threshold == 20);
    CHECK(a.exceeds_grs_threshold);
    CHECK(a.meets_singleton_with_equality);
    CHECK_FALSE(a.regime_validated);  // d = 80 > 51

    EaqeccParams b = table_row(3, 67, 40, 2);
    CHECK(b.n == 67);
    CHECK(b.k_q == 0);
    CHECK(b.d == 66);
    CHECK(b.c == 63);
    CHECK(b.source.hull_dim == 2);  // min(m-e, k) = min(27, 2)
    CHECK(b.grs_threshold == 1);
    CHECK(b.exceeds_grs_threshold);

    EaqeccParams c = table_row(2, 100, 2, 50);
    CHECK(c.k_q == 48);
    CHECK(c.d == 51);
    CHECK(c.c == 48);

    // the worked GF(16) example at k = 2, e = 2 becomes [[4, 0, 3; 0]]
    EaqeccParams d = table_row(2, 4, 2, 2);
    CHECK(d.n == 4);
    CHECK(d.k_q == 0);
    CHECK(d.d == 3);
    CHECK(d.c == 0);
}

TEST_CASE("table_row enforces the existence condition") {
    CHECK(testutil::thrown_code([] { table_row(3, 4, 1, 2); }) == errc::no_self_dual_basis);
    CHECK(testutil::thrown_code([] { table_row(9, 2, 1, 1); }) == errc::no_self_dual_basis);
    CHECK_FALSE(testutil::thrown_code([] { table_row(4, 2, 1, 1); }).has_value());
    CHECK(testutil::thrown_code([] { table_row(6, 4, 1, 2); }) == errc::not_prime);
    CHECK(testutil::thrown_code([] { table_row(2, 4, 4, 2); }) == errc::out_of_range);
}

TEST_CASE("table generation: empty, small identity-checked batch") {
    CHECK(table_generate({}).empty());

    auto rows = table_generate({{2, 6, 3, 1, 5}});
    REQUIRE(rows.size() == 5);
    for (const auto& r : rows) {
        CHECK(2 * r.d == r.n - r.k_q + 2 + r.c);
        CHECK(r.meets_singleton_with_equality);
    }
    CHECK(testutil::thrown_code([] { table_generate({{2, 6, 3, 4, 2}}); }) == errc::out_of_range);
}

TEST_CASE("builtin table reproduces the four symbolic row families") {
    auto specs = builtin_table_specs();
    REQUIRE(specs.size() == 4);
    auto rows = table_generate(specs);
    size_t idx = 0;
    // family 1: [[100, k-2, 101-k; 98-k]] for 21 <= k <= 98, threshold 20
    for (unsigned k = 21; k <= 98; ++k, ++idx) {
        const auto& r = rows[idx];
        INFO("family 1, k=" << k);
        CHECK(r.n == 100);
        CHECK(r.k_q == k - 2);
        CHECK(r.d == 101 - k);
        CHECK(r.c == 98 - k);
        CHECK(r.grs_threshold == 20);
        CHECK(r.exceeds_grs_threshold);
        CHECK(r.meets_singleton_with_equality);
    }
    // family 2: [[100, 2k-100, 101-k; 0]] for k in {98, 99}
    for (unsigned k = 98; k <= 99; ++k, ++idx) {
        const auto& r = rows[idx];
        INFO("family 2, k=" << k);
        CHECK(r.n == 100);
        CHECK(r.k_q == 2 * k - 100);
        CHECK(r.d == 101 - k);
        CHECK(r.c == 0);
        CHECK(r.grs_threshold == 20);
        CHECK(r.exceeds_grs_threshold);
    }
    // family 3: [[67, 0, 68-k; 67-2k]] for 2 <= k <= 27, threshold 1
    for (unsigned k = 2; k <= 27; ++k, ++idx) {
        const auto& r = rows[idx];
        INFO("family 3, k=" << k);
        CHECK(r.n == 67);
        CHECK(r.k_q == 0);
        CHECK(r.d == 68 - k);
        CHECK(r.c == 67 - 2 * k);
        CHECK(r.grs_threshold == 1);
        CHECK(r.exceeds_grs_threshold);
    }
    // family 4: [[67, k-27, 68-k; 40-k]] for 27 <= k <= 39
    for (unsigned k = 27; k <= 39; ++k, ++idx) {
        const auto& r = rows[idx];
        INFO("family 4, k=" << k);
        CHECK(r.n == 67);
        CHECK(r.k_q == k - 27);
        CHECK(r.d == 68 - k);
        CHECK(r.c == 40 - k);
        CHECK(r.grs_threshold == 1);
        CHECK(r.exceeds_grs_threshold);
    }
    CHECK(idx == rows.size());
    // the regime flag flips exactly where d crosses n/2 + 1
    for (const auto& r : rows) CHECK(r.regime_validated == (2 * r.d <= r.n + 2));
}

TEST_CASE("hull oracle feeds derive_params consistently with table_row") {
    FieldCtx f(2, 6);
    Basis alpha = self_dual_basis(f);
    for (unsigned k = 1; k < 6; ++k) {
        GabidulinCode code(alpha, k);
        for (unsigned e = 0; e < 6; ++e) {
            INFO("k=" << k << " e=" << e);
            unsigned l = hull_dim_oracle(code, e);
            EaqeccParams from_oracle = derive_params(6, k, l);
            EaqeccParams from_formula = table_row(2, 6, e, k);
            CHECK(from_oracle.k_q == from_formula.k_q);
            CHECK(from_oracle.d == from_formula.d);
            CHECK(from_oracle.c == from_formula.c);
        }
    }
}
