// Entanglement-assisted quantum code parameters derived from hull
// dimensions: an MDS code of length m and dimension k with e-Galois hull
// dimension l yields an [[m, k-l, m-k+1; m-k-l]] code over GF(q^m), always
// attaining 2d = n - k_q + 2 + c.
#pragma once

#include "gabhull/hull.hpp"

namespace gabhull {

namespace detail {

/// Smallest prime factor decomposition q = p^h, rejecting non prime powers.
inline std::pair<u64, unsigned> prime_power_decompose(u64 q) {
    if (q < 2) fail(errc::not_prime, "not a prime power");
    u64 p = 0;
    for (u64 d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) return {q, 1};
    unsigned h = 0;
    u64 rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++h;
    }
    if (rest != 1) fail(errc::not_prime, "not a prime power");
    return {p, h};
}

/// min(base^exp, cap) without overflow.
inline u64 pow_capped(u64 base, unsigned exp, u64 cap) {
    u64 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (r > cap / base) return cap;
        r *= base;
        if (r >= cap) return cap;
    }
    return r;
}

}  // namespace detail

/// floor((p^e + m) / (p^e + 1)), the dimension ceiling of the earlier
/// GRS-based hull constructions. Equals 1 as soon as p^e >= m - 1, so the
/// power is capped rather than computed in full.
inline u64 grs_dimension_threshold(u64 p, unsigned e, unsigned m) {
    if (m < 2) fail(errc::out_of_range, "threshold needs m >= 2");
    u64 cap = u64(m) + 2;
    u64 pe = detail::pow_capped(p, e, cap);
    if (pe >= u64(m) - 1) return 1;
    return (pe + m) / (pe + 1);
}

struct EaqeccSource {
    unsigned m = 0;
    unsigned k = 0;
    std::optional<unsigned> e;
    unsigned hull_dim = 0;
};

struct EaqeccParams {
    unsigned n = 0;
    unsigned k_q = 0;
    unsigned d = 0;
    unsigned c = 0;
    bool meets_singleton_with_equality = false;
    bool regime_validated = false;
    EaqeccSource source;
    // populated by table_row only
    std::optional<u64> p;
    std::optional<u64> grs_threshold;
    bool exceeds_grs_threshold = false;
};

/// Parameter map [[m, k-l, m-k+1; m-k-l]]; the two flags record equality in
/// the Singleton-style bound 2d <= n - k_q + 2 + c and membership in the
/// regime d <= n/2 + 1 where that bound is known to hold.
inline EaqeccParams derive_params(unsigned m, unsigned k, unsigned hull_dim) {
    if (k < 1 || k >= m) fail(errc::out_of_range, "code dimension must be in [1, m-1]");
    if (hull_dim > std::min(k, m - k))
        fail(errc::invalid_hull_dim, "hull dimension exceeds min(k, m-k)");
    EaqeccParams r;
    r.n = m;
    r.k_q = k - hull_dim;
    r.d = m - k + 1;
    r.c = m - k - hull_dim;
    if (2ull * r.d > u64(r.n) - r.k_q + 2 + r.c)
        fail(errc::internal_invariant, "derived parameters break the entanglement bound");
    r.meets_singleton_with_equality = 2ull * r.d == u64(r.n) - r.k_q + 2 + r.c;
    r.regime_validated = 2ull * r.d <= u64(r.n) + 2;
    r.source = {m, k, std::nullopt, hull_dim};
    return r;
}

/// One table row: hull dimension from the closed form (self-dual basis
/// required to exist for GF(q^m) over GF(q)), parameters from derive_params,
/// plus the GRS threshold comparison in base p.
inline EaqeccParams table_row(u64 q, unsigned m, unsigned e, unsigned k) {
    u64 p = detail::prime_power_decompose(q).first;
    if (!self_dual_exists(q, m))
        fail(errc::no_self_dual_basis,
             "no self-dual basis of GF(q^m) over GF(q): requires q even, or q and m both odd");
    unsigned l = hull_dim_formula(m, k, e);
    EaqeccParams r = derive_params(m, k, l);
    r.source.e = e;
    r.p = p;
    r.grs_threshold = grs_dimension_threshold(p, e, m);
    r.exceeds_grs_threshold = k > *r.grs_threshold;
    return r;
}

struct TableSpec {
    u64 q = 0;
    unsigned m = 0;
    unsigned e = 0;
    unsigned k_lo = 0;
    unsigned k_hi = 0;
};

inline std::vector<EaqeccParams> table_generate(const std::vector<TableSpec>& specs) {
    std::vector<EaqeccParams> rows;
    for (const TableSpec& s : specs) {
        if (s.k_lo > s.k_hi) fail(errc::out_of_range, "empty dimension range");
        for (unsigned k = s.k_lo; k <= s.k_hi; ++k) rows.push_back(table_row(s.q, s.m, s.e, k));
    }
    return rows;
}

/// The four built-in showcase rows: GF(2^100) at e = 2 and GF(3^67) at
/// e = 40, over their full dimension ranges.
inline std::vector<TableSpec> builtin_table_specs() {
    return {
        {2, 100, 2, 21, 98},
        {2, 100, 2, 98, 99},
        {3, 67, 40, 2, 27},
        {3, 67, 40, 27, 39},
    };
}

}  // namespace gabhull
