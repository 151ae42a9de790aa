// Gabidulin codes of length m over GF(q^m): Moore-matrix generators, parity
// checks from the trace-dual basis, and e-Galois dual generators in both
// closed form and kernel form.
//
// Convention: a vector x lies in the e-Galois dual of C when
// sum_i c_i x_i^{q^e} = 0 for every codeword c, i.e. the dual vector sits in
// the second slot of the inner product. The first-slot variant corresponds
// to replacing e by (m - e) mod m throughout.
#pragma once

#include "gabhull/basis.hpp"

namespace gabhull {

/// e-Galois inner product sum_i x_i * y_i^{q^e}.
inline FFElem galois_ip(const std::vector<FFElem>& x, const std::vector<FFElem>& y, unsigned e) {
    if (x.size() != y.size() || x.empty()) fail(errc::shape_mismatch, "inner product length mismatch");
    const FieldCtx& f = x[0].field();
    FFElem acc = FFElem::zero(f);
    for (size_t i = 0; i < x.size(); ++i) {
        if (&x[i].field() != &f || &y[i].field() != &f)
            fail(errc::field_mismatch, "inner product across field contexts");
        acc += x[i] * y[i].frob(e);
    }
    return acc;
}

class GabidulinCode {
public:
    GabidulinCode(Basis basis, unsigned k) : basis_(std::move(basis)), k_(k) {
        const FieldCtx& f = basis_.field();
        unsigned m = f.m();
        if (k < 1 || k > m) fail(errc::dimension_out_of_range, "code dimension must be in [1, m]");
        gen_ = moore_matrix(basis_, k);
        if (rank_of(gen_) != k) fail(errc::internal_invariant, "generator rank fell below k");
        beta_.emplace(dual_basis(basis_));
        beta_moore_ = moore_matrix(*beta_, m);
    }

    const FieldCtx& field() const { return basis_.field(); }
    const Basis& basis() const { return basis_; }
    const Basis& dual_basis_vec() const { return *beta_; }
    unsigned k() const { return k_; }
    unsigned m() const { return basis_.field().m(); }
    const Matrix& generator() const { return gen_; }

    /// (m-k) x m parity check with rows beta^{q^k}, ..., beta^{q^{m-1}};
    /// satisfies G H^T = 0.
    Matrix parity_check() const {
        unsigned mm = m();
        if (k_ == mm) fail(errc::full_dimension, "full-space code has an empty parity check");
        Matrix h = rows_of_beta_moore(k_, 0);
        Matrix prod = mat_mul(gen_, transpose(h));
        if (!is_zero_matrix(prod)) fail(errc::internal_invariant, "parity check not orthogonal");
        return h;
    }

    /// Generator of the e-Galois dual: rows beta^{q^{(k-e+i) mod m}} for
    /// i = 0..m-k-1, equivalently the parity check raised entry-wise to
    /// q^{m-e}. Both characterizations and the orthogonality
    /// G (D^{q^e})^T = 0 are verified before returning.
    Matrix galois_dual_gen(unsigned e) const {
        unsigned mm = m();
        if (k_ == mm) fail(errc::full_dimension, "full-space code has a trivial dual");
        if (e >= mm) fail(errc::out_of_range, "Galois parameter e must be in [0, m-1]");
        Matrix d = rows_of_beta_moore(k_, mm - e);
        Matrix h = rows_of_beta_moore(k_, 0);
        for (size_t r = 0; r < h.rows(); ++r)
            for (size_t c = 0; c < h.cols(); ++c)
                if (h.at(r, c).frob(mm - e) != d.at(r, c))
                    fail(errc::internal_invariant, "dual generator differs from twisted parity check");
        Matrix dq = d;
        for (size_t r = 0; r < dq.rows(); ++r)
            for (size_t c = 0; c < dq.cols(); ++c) dq.at(r, c) = dq.at(r, c).frob(e);
        if (!is_zero_matrix(mat_mul(gen_, transpose(dq))))
            fail(errc::internal_invariant, "dual generator fails Galois orthogonality");
        return d;
    }

    /// Same dual space computed without the closed form: solve G z^T = 0,
    /// then undo the Frobenius twist row-wise (z -> z^{q^{m-e}}).
    Matrix galois_dual_oracle(unsigned e) const {
        unsigned mm = m();
        if (k_ == mm) fail(errc::full_dimension, "full-space code has a trivial dual");
        if (e >= mm) fail(errc::out_of_range, "Galois parameter e must be in [0, m-1]");
        Matrix z = kernel(gen_);
        for (size_t r = 0; r < z.rows(); ++r)
            for (size_t c = 0; c < z.cols(); ++c) z.at(r, c) = z.at(r, c).frob(mm - e);
        return z;
    }

    /// msg * G for a length-k message.
    std::vector<FFElem> encode(const std::vector<FFElem>& msg) const {
        const FieldCtx& f = field();
        if (msg.size() != k_) fail(errc::shape_mismatch, "message length must equal k");
        unsigned mm = m();
        std::vector<FFElem> out(mm, FFElem::zero(f));
        for (unsigned i = 0; i < k_; ++i) {
            if (&msg[i].field() != &f) fail(errc::field_mismatch, "message from another context");
            if (msg[i].is_zero()) continue;
            for (unsigned c = 0; c < mm; ++c) out[c] += msg[i] * gen_.at(i, c);
        }
        return out;
    }

private:
    Matrix rows_of_beta_moore(unsigned first, unsigned shift) const {
        const FieldCtx& f = field();
        unsigned mm = m();
        Matrix out(f, mm - k_, mm);
        for (unsigned i = 0; i < mm - k_; ++i) {
            unsigned row = (first + i + shift) % mm;
            for (unsigned c = 0; c < mm; ++c) out.at(i, c) = beta_moore_.at(row, c);
        }
        return out;
    }

    Basis basis_;
    unsigned k_;
    Matrix gen_;
    std::optional<Basis> beta_;
    Matrix beta_moore_;
};

namespace detail {

inline u64 binomial_capped(unsigned n, unsigned k, u64 cap) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    u64 r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        // r fits in u64 well below cap^2 because we clamp every round
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return r;
}

}  // namespace detail

namespace detail {

// Nonsingularity of one k x k minor over raw coefficient buffers; works on
// a caller-provided scratch to keep the minor enumeration allocation-free.
inline bool minor_nonsingular(const FieldCtx& f, std::vector<u64>& a, unsigned k,
                              std::vector<u64>& tmp, std::vector<u64>& factor,
                              std::vector<u64>& pivinv) {
    unsigned n = f.n();
    auto cell = [&](unsigned r, unsigned j) {
        return std::span<u64>(a.data() + (size_t(r) * k + j) * n, n);
    };
    auto nonzero = [&](std::span<const u64> x) {
        for (u64 v : x)
            if (v) return true;
        return false;
    };
    for (unsigned col = 0; col < k; ++col) {
        unsigned piv = col;
        while (piv < k && !nonzero(cell(piv, col))) ++piv;
        if (piv == k) return false;
        if (piv != col)
            std::swap_ranges(a.begin() + (size_t(piv) * k + col) * n,
                             a.begin() + (size_t(piv) * k + k) * n,
                             a.begin() + (size_t(col) * k + col) * n);
        f.inv_raw(cell(col, col), pivinv);
        for (unsigned r = col + 1; r < k; ++r) {
            if (!nonzero(cell(r, col))) continue;
            f.mul_raw(cell(r, col), pivinv, factor);
            for (unsigned j = col + 1; j < k; ++j) {
                if (!nonzero(cell(col, j))) continue;
                f.mul_raw(factor, cell(col, j), tmp);
                f.sub_raw(cell(r, j), tmp, cell(r, j));
            }
        }
    }
    return true;
}

}  // namespace detail

/// MDS criterion: every k x m column selection of the generator must be
/// nonsingular. Checked through the systematic form [I | A]: a k-column
/// selection mixing t identity columns with k-t columns of A has determinant
/// equal (up to sign) to a (k-t) x (k-t) minor of A, so the code is MDS
/// exactly when every square submatrix of A, of every order, is
/// nonsingular. The total minor count is still binomial(m, k); throws when
/// it exceeds the budget.
inline bool is_mds(const GabidulinCode& c, u64 minor_budget = 100000) {
    unsigned m = c.m(), k = c.k();
    if (detail::binomial_capped(m, k, minor_budget) > minor_budget)
        fail(errc::too_large, "minor count exceeds the MDS check budget");
    if (k == m) return true;  // single minor, the full Moore matrix, already validated
    const FieldCtx& f = c.field();
    unsigned n = f.n(), w = m - k;
    RrefResult rr = rref(c.generator());
    for (unsigned i = 0; i < k; ++i)
        if (rr.pivots[i] != i)
            fail(errc::internal_invariant, "leading Moore minor unexpectedly singular");
    // flat raw copy of A, the non-systematic block
    std::vector<u64> band(size_t(k) * w * n);
    for (unsigned r = 0; r < k; ++r)
        for (unsigned j = 0; j < w; ++j) {
            const auto& src = rr.mat.at(r, k + j).coeffs();
            std::copy(src.begin(), src.end(), band.begin() + (size_t(r) * w + j) * n);
        }
    std::vector<u64> a, tmp(n), factor(n), pivinv(n);
    std::vector<unsigned> rows, cols;
    auto next_combination = [](std::vector<unsigned>& ix, unsigned total) {
        unsigned j = unsigned(ix.size());
        int i = int(j) - 1;
        while (i >= 0 && ix[i] == total - j + unsigned(i)) --i;
        if (i < 0) return false;
        ++ix[i];
        for (unsigned t = unsigned(i) + 1; t < j; ++t) ix[t] = ix[t - 1] + 1;
        return true;
    };
    for (unsigned j = 1; j <= std::min(k, w); ++j) {
        a.assign(size_t(j) * j * n, 0);
        rows.resize(j);
        for (unsigned i = 0; i < j; ++i) rows[i] = i;
        do {
            cols.resize(j);
            for (unsigned i = 0; i < j; ++i) cols[i] = i;
            do {
                for (unsigned r = 0; r < j; ++r)
                    for (unsigned col = 0; col < j; ++col)
                        std::copy_n(band.begin() + (size_t(rows[r]) * w + cols[col]) * n, n,
                                    a.begin() + (size_t(r) * j + col) * n);
                if (!detail::minor_nonsingular(f, a, j, tmp, factor, pivinv)) return false;
            } while (next_combination(cols, w));
        } while (next_combination(rows, k));
    }
    return true;
}

/// Exhaustive minimum rank weight: enumerates all q^{mk} codewords, expands
/// each into GF(q)-coordinates, and takes the minimum rank. Only for tiny
/// codes; the default budget matches |GF(q^m)|^k <= 2^16.
inline unsigned min_rank_weight_exhaustive(const GabidulinCode& c, u64 codeword_budget = 65536) {
    const FieldCtx& f = c.field();
    unsigned m = c.m(), k = c.k(), n = f.n(), h = f.h();
    auto ord = f.order();
    if (!ord) fail(errc::too_large, "field too large for exhaustive enumeration");
    u64 total = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (total > codeword_budget / *ord)
            fail(errc::too_large, "codeword count exceeds the exhaustive budget");
        total *= *ord;
    }
    // all field elements, odometer over base-p coefficient vectors
    std::vector<FFElem> elems;
    {
        std::vector<u64> digits(n, 0);
        while (true) {
            elems.emplace_back(f, digits);
            unsigned pos = 0;
            while (pos < n && ++digits[pos] == f.p()) digits[pos++] = 0;
            if (pos == n) break;
        }
    }
    const auto& sub = f.subfield_gfp_basis();
    unsigned best = m + 1;
    std::vector<unsigned> msg_idx(k, 0);
    std::vector<FFElem> msg(k, FFElem::zero(f));
    while (true) {
        bool all_zero = true;
        for (unsigned i = 0; i < k; ++i) {
            msg[i] = elems[msg_idx[i]];
            if (msg_idx[i]) all_zero = false;
        }
        if (!all_zero) {
            std::vector<FFElem> cw = c.encode(msg);
            // rank weight = dim over GF(q) of the coordinate span; over GF(p)
            // that span is generated by s_t * c_i and has h times the dimension
            detail::PMat rows(unsigned(m * h), n);
            std::vector<u64> prod(n);
            for (unsigned i = 0; i < m; ++i)
                for (unsigned t = 0; t < h; ++t) {
                    f.mul_raw(cw[i].coeffs(), sub[t], prod);
                    std::copy(prod.begin(), prod.end(),
                              rows.a.begin() + (size_t(i) * h + t) * n);
                }
            unsigned r = detail::pmat_rref(rows, f.p());
            if (r % h != 0) fail(errc::internal_invariant, "coordinate span rank not divisible by h");
            best = std::min(best, r / h);
        }
        unsigned pos = 0;
        while (pos < k && ++msg_idx[pos] == elems.size()) msg_idx[pos++] = 0;
        if (pos == k) break;
    }
    return best;
}

}  // namespace gabhull
