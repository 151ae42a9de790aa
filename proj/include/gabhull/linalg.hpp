// Exact dense linear algebra over an extension field: reduced row echelon
// form, rank, kernel, inverse, and row-space intersection. Everything is
// deterministic; pivots are the first nonzero entry in column order.
#pragma once

#include <cassert>

#include "gabhull/field.hpp"

namespace gabhull {

class Matrix {
public:
    Matrix() = default;
    Matrix(const FieldCtx& f, size_t rows, size_t cols)
        : f_(&f), rows_(rows), cols_(cols), d_(rows * cols, FFElem::zero(f)) {
        if (cols == 0) fail(errc::shape_mismatch, "matrix must have at least one column");
    }

    static Matrix identity(const FieldCtx& f, size_t n) {
        Matrix m(f, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = FFElem::one(f);
        return m;
    }

    static Matrix from_rows(const FieldCtx& f, std::vector<std::vector<FFElem>> rows) {
        size_t cols = rows.empty() ? 1 : rows[0].size();
        Matrix m(f, rows.size(), cols);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) fail(errc::shape_mismatch, "ragged rows");
            for (size_t c = 0; c < cols; ++c) m.at(r, c) = std::move(rows[r][c]);
        }
        return m;
    }

    const FieldCtx& field() const {
        if (!f_) fail(errc::internal_invariant, "use of default-constructed matrix");
        return *f_;
    }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    FFElem& at(size_t r, size_t c) { return d_[r * cols_ + c]; }
    const FFElem& at(size_t r, size_t c) const { return d_[r * cols_ + c]; }

    std::vector<FFElem> row(size_t r) const {
        return {d_.begin() + long(r * cols_), d_.begin() + long((r + 1) * cols_)};
    }

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        for (size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.f_ == b.f_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
    }

private:
    const FieldCtx* f_ = nullptr;
    size_t rows_ = 0, cols_ = 0;
    std::vector<FFElem> d_;
};

inline Matrix transpose(const Matrix& m) {
    Matrix t(m.field(), m.cols(), m.rows());
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) t.at(c, r) = m.at(r, c);
    return t;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (&a.field() != &b.field()) fail(errc::field_mismatch, "matrix product across contexts");
    if (a.cols() != b.rows()) fail(errc::shape_mismatch, "inner dimensions disagree");
    const FieldCtx& f = a.field();
    Matrix c(f, a.rows(), b.cols());
    std::vector<u64> tmp(f.n());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            const FFElem& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (size_t j = 0; j < b.cols(); ++j) {
                const FFElem& bkj = b.at(k, j);
                if (bkj.is_zero()) continue;
                f.mul_raw(aik.coeffs(), bkj.coeffs(), tmp);
                FFElem& out = c.at(i, j);
                f.add_raw(out.coeffs(), tmp, out.mutable_coeffs());
            }
        }
    return c;
}

inline Matrix stack(const Matrix& a, const Matrix& b) {
    if (&a.field() != &b.field()) fail(errc::field_mismatch, "stack across contexts");
    if (a.cols() != b.cols()) fail(errc::shape_mismatch, "stack with differing column counts");
    Matrix s(a.field(), a.rows() + b.rows(), a.cols());
    for (size_t r = 0; r < a.rows(); ++r)
        for (size_t c = 0; c < a.cols(); ++c) s.at(r, c) = a.at(r, c);
    for (size_t r = 0; r < b.rows(); ++r)
        for (size_t c = 0; c < b.cols(); ++c) s.at(a.rows() + r, c) = b.at(r, c);
    return s;
}

inline bool is_zero_matrix(const Matrix& m) {
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero()) return false;
    return true;
}

namespace detail {

// In-place elimination. If reduce is set, produces the reduced echelon form
// (pivots scaled to 1, eliminated above and below); otherwise stops at a row
// echelon form sufficient for rank. Returns pivot columns.
inline std::vector<size_t> eliminate(Matrix& m, bool reduce) {
    const FieldCtx& f = m.field();
    std::vector<size_t> pivots;
    std::vector<u64> tmp(f.n());
    size_t r = 0;
    for (size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        size_t piv = r;
        while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(r, piv);
        if (reduce) {
            FFElem s = m.at(r, col).inv();
            for (size_t c = col; c < m.cols(); ++c) m.at(r, c) *= s;
        }
        for (size_t i = reduce ? 0 : r + 1; i < m.rows(); ++i) {
            if (i == r || m.at(i, col).is_zero()) continue;
            // row_i -= factor * row_r with factor chosen to zero column col
            FFElem factor = reduce ? m.at(i, col) : m.at(i, col) * m.at(r, col).inv();
            for (size_t c = col; c < m.cols(); ++c) {
                if (m.at(r, c).is_zero()) continue;
                f.mul_raw(factor.coeffs(), m.at(r, c).coeffs(), tmp);
                FFElem& out = m.at(i, c);
                f.sub_raw(out.coeffs(), tmp, out.mutable_coeffs());
            }
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

}  // namespace detail

struct RrefResult {
    Matrix mat;
    std::vector<size_t> pivots;
    size_t rank() const { return pivots.size(); }
};

inline RrefResult rref(Matrix m) {
    auto pivots = detail::eliminate(m, true);
    return {std::move(m), std::move(pivots)};
}

inline size_t rank_of(Matrix m) { return detail::eliminate(m, false).size(); }

/// Basis of the right null space {x : M x^T = 0}, one kernel vector per row.
/// May have zero rows when the kernel is trivial.
inline Matrix kernel(const Matrix& m) {
    RrefResult rr = rref(m);
    size_t rank = rr.rank(), cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : rr.pivots) is_pivot[c] = true;
    Matrix k(m.field(), cols - rank, cols);
    size_t out = 0;
    for (size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        k.at(out, c) = FFElem::one(m.field());
        for (size_t r = 0; r < rank; ++r) k.at(out, rr.pivots[r]) = -rr.mat.at(r, c);
        ++out;
    }
    assert(rank + k.rows() == cols);  // rank-nullity
    return k;
}

inline Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) fail(errc::shape_mismatch, "inverse of non-square matrix");
    size_t n = m.rows();
    Matrix aug(m.field(), n, 2 * n);
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, n + r) = FFElem::one(m.field());
    }
    std::vector<size_t> pivots = detail::eliminate(aug, true);
    size_t lead = 0;
    for (size_t c : pivots)
        if (c < n) ++lead;
    if (lead != n) fail(errc::singular, "singular matrix");
    Matrix inv(m.field(), n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
    return inv;
}

/// dim(rowspace(A) ∩ rowspace(B)) = rank A + rank B - rank of the stack.
inline size_t intersection_dim(const Matrix& a, const Matrix& b) {
    if (&a.field() != &b.field()) fail(errc::field_mismatch, "intersection across contexts");
    if (a.cols() != b.cols()) fail(errc::shape_mismatch, "intersection with differing lengths");
    size_t ra = rank_of(a), rb = rank_of(b), rs = rank_of(stack(a, b));
    return ra + rb - rs;
}

/// Basis of rowspace(A) ∩ rowspace(B) for matrices with independent rows.
/// Solutions of u·A = v·B are read off the kernel of [A; -B]^T and mapped
/// through u -> u·A.
inline Matrix intersection_basis(const Matrix& a, const Matrix& b) {
    if (&a.field() != &b.field()) fail(errc::field_mismatch, "intersection across contexts");
    if (a.cols() != b.cols()) fail(errc::shape_mismatch, "intersection with differing lengths");
    const FieldCtx& f = a.field();
    Matrix negb(f, b.rows(), b.cols());
    for (size_t r = 0; r < b.rows(); ++r)
        for (size_t c = 0; c < b.cols(); ++c) negb.at(r, c) = -b.at(r, c);
    Matrix sys = transpose(stack(a, negb));  // cols x (rows_a + rows_b)
    Matrix ker = kernel(sys);
    Matrix result(f, ker.rows(), a.cols());
    std::vector<u64> tmp(f.n());
    for (size_t r = 0; r < ker.rows(); ++r)
        for (size_t k = 0; k < a.rows(); ++k) {
            const FFElem& u = ker.at(r, k);
            if (u.is_zero()) continue;
            for (size_t c = 0; c < a.cols(); ++c) {
                if (a.at(k, c).is_zero()) continue;
                f.mul_raw(u.coeffs(), a.at(k, c).coeffs(), tmp);
                FFElem& out = result.at(r, c);
                f.add_raw(out.coeffs(), tmp, out.mutable_coeffs());
            }
        }
    return result;
}

/// True when x lies in the row space of A.
inline bool in_rowspace(const Matrix& a, const std::vector<FFElem>& x) {
    Matrix ext(a.field(), a.rows() + 1, a.cols());
    for (size_t r = 0; r < a.rows(); ++r)
        for (size_t c = 0; c < a.cols(); ++c) ext.at(r, c) = a.at(r, c);
    for (size_t c = 0; c < a.cols(); ++c) ext.at(a.rows(), c) = x[c];
    return rank_of(ext) == rank_of(a);
}

}  // namespace gabhull
