#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gabhull/field.hpp"
#include "test_util.hpp"

using namespace gabhull;
using testutil::all_elements;
using testutil::random_elem;
using testutil::thrown_code;

namespace {

// Independent multiplication oracle: schoolbook product followed by long
// division, using only integer arithmetic (no library polynomial code).
std::vector<u64> naive_mul(const std::vector<u64>& a, const std::vector<u64>& b,
                           const std::vector<u64>& mod, u64 p) {
    size_t n = mod.size() - 1;
    std::vector<u64> prod(2 * n - 1, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            prod[i + j] = (prod[i + j] + u128(a[i]) * b[j] % p) % p;
    for (size_t d = prod.size(); d-- > n;) {
        u64 t = prod[d];
        if (!t) continue;
        prod[d] = 0;
        for (size_t j = 0; j < n; ++j)
            prod[d - n + j] = (prod[d - n + j] + u128(p - t) * mod[j] % p) % p;
    }
    prod.resize(n);
    return prod;
}

}  // namespace

TEST_CASE("GF(16) arithmetic from the worked example") {
    FieldCtx f(2, 4, parse_poly("x^4+x+1", 2));
    FFElem w = FFElem::gen(f);
    REQUIRE(w.pow(4) == w + FFElem::one(f));        // w^4 = w + 1
    REQUIRE(w.pow(3) * w == w + FFElem::one(f));    // w^3 * w = w + 1
    REQUIRE(w.pow(15) == FFElem::one(f));

    // inv(w) = w^14, confirmed by exhaustive multiplication over all powers
    FFElem winv = w.inv();
    REQUIRE(w * winv == FFElem::one(f));
    int matches = 0;
    for (int k = 0; k < 15; ++k)
        if (w.pow(u64(k)) == winv) {
            REQUIRE(k == 14);
            ++matches;
        }
    REQUIRE(matches == 1);
}

TEST_CASE("trace values over GF(16)/GF(2)") {
    FieldCtx f(2, 4, parse_poly("x^4+x+1", 2));
    FFElem w = FFElem::gen(f);
    REQUIRE(w.pow(3).trace() == FFElem::one(f));
    REQUIRE(w.trace() == FFElem::zero(f));
    REQUIRE(FFElem::one(f).trace() == FFElem::zero(f));  // trace of 1 is m mod p
    FieldCtx f9(3, 3);
    REQUIRE(FFElem::one(f9).trace() == FFElem::from_u64(f9, 3 % 3));
    FieldCtx f25(5, 2);
    REQUIRE(FFElem::one(f25).trace() == FFElem::from_u64(f25, 2));
}

TEST_CASE("trace is GF(q)-linear and lands in GF(q)") {
    std::mt19937_64 rng(7);
    for (auto [p, n, h] : {std::tuple<u64, unsigned, unsigned>{2, 8, 2},
                           {3, 6, 2},
                           {2, 9, 3},
                           {5, 4, 1}}) {
        FieldCtx f(p, n, std::nullopt, h);
        for (int trial = 0; trial < 20; ++trial) {
            FFElem a = random_elem(f, rng), b = random_elem(f, rng);
            REQUIRE((a + b).trace() == a.trace() + b.trace());
            REQUIRE(f.in_subfield(a.trace().coeffs()));
            // scaling by a subfield element commutes with the trace
            FFElem c = random_elem(f, rng).trace();  // arbitrary element of GF(q)
            REQUIRE((c * a).trace() == c * a.trace());
        }
    }
}

TEST_CASE("Frobenius is additive, multiplicative, and matches pow") {
    FieldCtx f9(3, 2);
    FFElem g = FFElem::gen(f9);
    REQUIRE(g.frob(1) == g.pow(3));
    std::mt19937_64 rng(11);
    for (auto [p, n, h] : {std::tuple<u64, unsigned, unsigned>{2, 10, 1},
                           {3, 4, 2},
                           {7, 3, 1}}) {
        FieldCtx f(p, n, std::nullopt, h);
        u64 q = f.q();
        for (int trial = 0; trial < 25; ++trial) {
            FFElem a = random_elem(f, rng), b = random_elem(f, rng);
            REQUIRE((a + b).frob(1) == a.frob(1) + b.frob(1));
            REQUIRE((a * b).frob(1) == a.frob(1) * b.frob(1));
            REQUIRE(a.frob(1) == a.pow(q));
            REQUIRE(a.frob(f.m()) == a);  // full orbit returns to the element
            REQUIRE(a.frob(2) == a.frob(1).frob(1));
        }
    }
}

TEST_CASE("multiplication matches the naive oracle") {
    std::mt19937_64 rng(13);
    for (auto [p, n] : {std::pair<u64, unsigned>{2, 100}, {2, 64}, {2, 7}, {101, 3}, {3, 15}}) {
        FieldCtx f(p, n);
        for (int trial = 0; trial < 30; ++trial) {
            FFElem a = random_elem(f, rng), b = random_elem(f, rng);
            auto expect = naive_mul(a.coeffs(), b.coeffs(), f.modulus(), p);
            REQUIRE((a * b).coeffs() == expect);
        }
    }
}

TEST_CASE("pow(a, field order - 1) = 1") {
    for (auto [p, n] : {std::pair<u64, unsigned>{2, 8}, {3, 4}, {5, 3}, {13, 2}}) {
        FieldCtx f(p, n);
        u64 order = *f.order();
        for (const FFElem& a : all_elements(f)) {
            if (a.is_zero()) continue;
            REQUIRE(a.pow(order - 1) == FFElem::one(f));
        }
    }
    // sampled above the exhaustive range
    std::mt19937_64 rng(17);
    FieldCtx big(2, 40);
    for (int trial = 0; trial < 5; ++trial) {
        FFElem a = random_elem(big, rng);
        if (a.is_zero()) continue;
        REQUIRE(a.pow(*big.order() - 1) == FFElem::one(big));
    }
}

TEST_CASE("inverses work everywhere") {
    FieldCtx f(2, 100);
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        FFElem a = random_elem(f, rng);
        if (a.is_zero()) continue;
        REQUIRE(a * a.inv() == FFElem::one(f));
    }
    FieldCtx f27(3, 3);
    for (const FFElem& a : all_elements(f27)) {
        if (a.is_zero()) continue;
        REQUIRE((a.inv() * a).coeffs()[0] == 1);
    }
}

TEST_CASE("default modulus is the lexicographically smallest irreducible") {
    // independent oracle for GF(9): a monic quadratic over GF(3) is
    // irreducible iff it has no root; scan tuples (c0, c1) in lex order
    Poly expected;
    for (u64 c0 = 0; c0 < 3 && expected.empty(); ++c0)
        for (u64 c1 = 0; c1 < 3 && expected.empty(); ++c1) {
            bool has_root = false;
            for (u64 x = 0; x < 3; ++x)
                if ((x * x + c1 * x + c0) % 3 == 0) has_root = true;
            if (!has_root) expected = Poly{c0, c1, 1};
        }
    REQUIRE(expected == Poly{1, 0, 1});  // x^2 + 1
    FieldCtx f9(3, 2);
    REQUIRE(f9.modulus() == expected);

    // determinism: two constructions give identical context data
    FieldCtx a(2, 12), b(2, 12);
    REQUIRE(a.modulus() == b.modulus());

    // GF(2^4) default: x^4+x^3+1 precedes x^4+x+1 in tuple order
    FieldCtx f16(2, 4);
    REQUIRE(f16.modulus() == Poly{1, 0, 0, 1, 1});
    REQUIRE(poly_to_string(f16.modulus()) == "x^4+x^3+1");
}

TEST_CASE("prime field degenerate case") {
    FieldCtx f2(2, 1);
    REQUIRE(f2.modulus() == Poly{0, 1});
    FFElem one = FFElem::one(f2);
    REQUIRE(one + one == FFElem::zero(f2));
    REQUIRE(one.trace() == one);
    FieldCtx f7(7, 1);
    REQUIRE(FFElem::from_u64(f7, 3) * FFElem::from_u64(f7, 5) == FFElem::from_u64(f7, 1));
}

TEST_CASE("subfield structure of GF(16) over GF(4)") {
    FieldCtx f(2, 4, std::nullopt, 2);
    REQUIRE(f.q() == 4);
    REQUIRE(f.m() == 2);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        FFElem a = random_elem(f, rng);
        FFElem t = a.trace();
        REQUIRE(t == a + a.frob(1));
        REQUIRE(f.in_subfield(t.coeffs()));
        // canonical coordinates round-trip through the embedding
        if (!t.is_zero()) {
            auto coords = f.subfield_coords(t.coeffs());
            REQUIRE(coords.size() == 2);
            REQUIRE(f.embed_subfield(coords) == t.coeffs());
        }
    }
    // GF(4) inside GF(16) has exactly 4 elements fixed by x -> x^4
    int fixed = 0;
    for (const FFElem& a : all_elements(f))
        if (f.in_subfield(a.coeffs())) ++fixed;
    REQUIRE(fixed == 4);
}

TEST_CASE("polynomial and element text formats") {
    REQUIRE(parse_poly("x^4+x+1", 2) == Poly{1, 1, 0, 0, 1});
    REQUIRE(parse_poly("[1,1,0,0,1]", 2) == Poly{1, 1, 0, 0, 1});
    REQUIRE(parse_poly("2*x^2+x+2", 3) == Poly{2, 1, 2});
    REQUIRE(poly_to_string(Poly{1, 1, 0, 0, 1}) == "x^4+x+1");
    FieldCtx f(2, 4, parse_poly("x^4+x+1", 2));
    FFElem w = FFElem::gen(f);
    REQUIRE(element_to_string(w.pow(3) + FFElem::one(f)) == "w^3+1");
    REQUIRE(parse_element(f, "w^3+1") == w.pow(3) + FFElem::one(f));
    REQUIRE(parse_element(f, "[1,0,0,1]") == w.pow(3) + FFElem::one(f));
    REQUIRE(parse_element(f, "w^4") == w + FFElem::one(f));  // reduced mod the modulus
    FieldCtx f9(3, 2);
    REQUIRE(element_to_string(FFElem::gen(f9)) == "[0,1]");
    REQUIRE(element_to_string(FFElem::zero(f)) == "0");
}

TEST_CASE("construction and arithmetic errors") {
    REQUIRE(thrown_code([] { FieldCtx(4, 2); }) == errc::not_prime);
    // x^4+x^2+1 = (x^2+x+1)^2
    REQUIRE(thrown_code([] { FieldCtx(2, 4, Poly{1, 0, 1, 0, 1}); }) == errc::reducible_modulus);
    FieldCtx f(2, 4);
    REQUIRE(thrown_code([&] { FFElem::zero(f).inv(); }) == errc::division_by_zero);
    FieldCtx g(2, 4);  // same parameters, distinct context object
    REQUIRE(thrown_code([&] { (void)(FFElem::one(f) + FFElem::one(g)); }) == errc::field_mismatch);
    REQUIRE(thrown_code([] { FieldCtx(3, 4, std::nullopt, 3); }).has_value());  // h must divide n
}
