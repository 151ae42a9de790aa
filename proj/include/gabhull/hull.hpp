// e-Galois hulls of Gabidulin codes: the closed-form dimension valid under
// self-dual bases, an independent rank-based oracle valid for any basis,
// explicit hull bases, and the LCD / self-orthogonal / self-dual taxonomy.
#pragma once

#include "gabhull/gabidulin.hpp"

#include <string>

namespace gabhull {

enum class Classification { lcd, self_orthogonal_proper, self_dual, dual_containing, generic };

inline std::string to_string(Classification c) {
    switch (c) {
        case Classification::lcd: return "LCD";
        case Classification::self_orthogonal_proper: return "self-orthogonal-proper";
        case Classification::self_dual: return "self-dual";
        case Classification::dual_containing: return "dual-containing";
        case Classification::generic: return "generic";
    }
    fail(errc::internal_invariant, "unknown classification");
}

inline Classification classification_from_string(const std::string& s) {
    if (s == "LCD") return Classification::lcd;
    if (s == "self-orthogonal-proper") return Classification::self_orthogonal_proper;
    if (s == "self-dual") return Classification::self_dual;
    if (s == "dual-containing") return Classification::dual_containing;
    if (s == "generic") return Classification::generic;
    fail(errc::parse_error, "unknown classification: " + s);
}

/// Closed-form hull dimension of a Gabidulin code built on a self-dual
/// basis: min(m-k, e) for e <= k, min(m-e, k) for e >= k+1.
inline unsigned hull_dim_formula(unsigned m, unsigned k, unsigned e) {
    if (k < 1 || k >= m) fail(errc::out_of_range, "hull formula needs 1 <= k <= m-1");
    if (e >= m) fail(errc::out_of_range, "hull formula needs 0 <= e <= m-1");
    if (e <= k) return std::min(m - k, e);
    return std::min(m - e, k);
}

/// Hull dimension from ranks alone: dim(C) + dim(C^{perp_e}) - dim(C + C^{perp_e})
/// collapses to m - rank(G stacked on the dual generator). Cross-checked
/// against the intersection dimension computed from the kernel-form dual.
inline unsigned hull_dim_oracle(const GabidulinCode& c, unsigned e) {
    unsigned m = c.m();
    Matrix d = c.galois_dual_gen(e);
    unsigned dim = m - unsigned(rank_of(stack(c.generator(), d)));
    unsigned check = unsigned(intersection_dim(c.generator(), c.galois_dual_oracle(e)));
    if (dim != check) fail(errc::internal_invariant, "hull dimension paths disagree");
    return dim;
}

/// Explicit basis of C intersected with its e-Galois dual; may have zero
/// rows. Every row is verified to lie in both row spaces and to be
/// Galois-orthogonal to the whole code.
inline Matrix hull_basis(const GabidulinCode& c, unsigned e) {
    Matrix d = c.galois_dual_gen(e);
    Matrix basis = intersection_basis(c.generator(), d);
    if (basis.rows() != hull_dim_oracle(c, e))
        fail(errc::internal_invariant, "hull basis row count mismatch");
    for (size_t r = 0; r < basis.rows(); ++r) {
        std::vector<FFElem> row;
        for (size_t j = 0; j < basis.cols(); ++j) row.push_back(basis.at(r, j));
        if (!in_rowspace(c.generator(), row) || !in_rowspace(d, row))
            fail(errc::internal_invariant, "hull basis row escapes the intersection");
        for (size_t i = 0; i < c.k(); ++i) {
            std::vector<FFElem> gi;
            for (size_t j = 0; j < basis.cols(); ++j) gi.push_back(c.generator().at(i, j));
            if (!galois_ip(gi, row, e).is_zero())
                fail(errc::internal_invariant, "hull basis row not Galois-orthogonal");
        }
    }
    return basis;
}

/// Taxonomy by hull dimension: 0 is LCD, k < m-k is self-orthogonal,
/// k = m-k is self-dual, m-k < k is dual-containing, anything else generic.
inline Classification classification_from_dims(unsigned m, unsigned k, unsigned dim) {
    if (dim == k && k * 2 == m) return Classification::self_dual;
    if (dim == k) return Classification::self_orthogonal_proper;
    if (dim == m - k) return Classification::dual_containing;
    if (dim == 0) return Classification::lcd;
    return Classification::generic;
}

inline Classification classify(const GabidulinCode& c, unsigned e) {
    return classification_from_dims(c.m(), c.k(), hull_dim_oracle(c, e));
}

/// G G^T nonsingular characterizes Euclidean LCD independently of any hull
/// computation.
inline bool euclidean_lcd_test(const GabidulinCode& c) {
    Matrix p = mat_mul(c.generator(), transpose(c.generator()));
    return rank_of(p) == c.k();
}

/// G (G^{q^{m/2}})^T = 0 with k = m/2 characterizes Hermitian self-duality;
/// only meaningful for even m.
inline bool hermitian_selfdual_test(const GabidulinCode& c) {
    unsigned m = c.m();
    if (m % 2 != 0) fail(errc::odd_length, "Hermitian test needs even extension degree");
    Matrix conj = c.generator();
    for (size_t r = 0; r < conj.rows(); ++r)
        for (size_t j = 0; j < conj.cols(); ++j) conj.at(r, j) = conj.at(r, j).frob(m / 2);
    return is_zero_matrix(mat_mul(c.generator(), transpose(conj))) && c.k() * 2 == m;
}

struct GGTransposeTests {
    bool lcd_euclidean;
    bool selfdual_hermitian;
};

/// Both matrix-product tests at once; requires even m because the Hermitian
/// half is undefined otherwise.
inline GGTransposeTests gg_transpose_tests(const GabidulinCode& c) {
    if (c.m() % 2 != 0) fail(errc::odd_length, "Hermitian test needs even extension degree");
    return {euclidean_lcd_test(c), hermitian_selfdual_test(c)};
}

/// One (k, e) evaluation: both dimension paths, agreement, whether the
/// closed form is claimed for this basis, and the taxonomy label.
struct HullReport {
    u64 p = 0;
    unsigned h = 0;
    unsigned m = 0;
    unsigned k = 0;
    unsigned e = 0;
    unsigned dim_formula = 0;
    unsigned dim_oracle = 0;
    bool agree = false;
    bool formula_applies = false;
    Classification classification = Classification::generic;
    std::optional<Matrix> basis;
};

inline HullReport hull_report(const GabidulinCode& c, unsigned e, bool with_basis = false) {
    const FieldCtx& f = c.field();
    HullReport r;
    r.p = f.p();
    r.h = f.h();
    r.m = f.m();
    r.k = c.k();
    r.e = e;
    r.dim_formula = hull_dim_formula(r.m, r.k, e);
    r.dim_oracle = hull_dim_oracle(c, e);
    r.agree = r.dim_formula == r.dim_oracle;
    r.formula_applies = is_self_dual(c.basis());
    r.classification = classify(c, e);
    if (with_basis) r.basis = hull_basis(c, e);
    return r;
}

}  // namespace gabhull
