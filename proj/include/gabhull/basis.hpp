// Bases of GF(q^m) over GF(q): Moore matrices, trace-dual bases, and
// construction of self-dual bases (Gram matrix of the trace form equal to
// the identity) whenever they exist: q even, or q and m both odd.
#pragma once

#include "gabhull/linalg.hpp"

namespace gabhull {

/// An ordered GF(q)-basis of GF(q^m), validated on construction via
/// nonsingularity of its full Moore matrix.
class Basis {
public:
    Basis(const FieldCtx& f, std::vector<FFElem> elems) : f_(&f), elems_(std::move(elems)) {
        if (elems_.size() != f.m()) fail(errc::shape_mismatch, "basis needs exactly m elements");
        for (const FFElem& e : elems_)
            if (&e.field() != &f) fail(errc::field_mismatch, "basis element from another context");
        Matrix mo(f, f.m(), f.m());
        std::vector<FFElem> row = elems_;
        for (unsigned r = 0; r < f.m(); ++r) {
            for (unsigned c = 0; c < f.m(); ++c) mo.at(r, c) = row[c];
            if (r + 1 < f.m())
                for (auto& e : row) e = e.frob(1);
        }
        if (rank_of(mo) != f.m()) fail(errc::singular, "elements are GF(q)-linearly dependent");
    }

    const FieldCtx& field() const { return *f_; }
    const std::vector<FFElem>& elems() const { return elems_; }
    const FFElem& operator[](size_t i) const { return elems_[i]; }
    size_t size() const { return elems_.size(); }

    friend bool operator==(const Basis& a, const Basis& b) {
        return a.f_ == b.f_ && a.elems_ == b.elems_;
    }

private:
    const FieldCtx* f_;
    std::vector<FFElem> elems_;
};

/// The power basis 1, g, ..., g^{m-1} of the context generator g.
inline Basis power_basis(const FieldCtx& f) {
    std::vector<FFElem> elems;
    FFElem g = FFElem::gen(f), cur = FFElem::one(f);
    for (unsigned i = 0; i < f.m(); ++i) {
        elems.push_back(cur);
        cur = cur * g;
    }
    return Basis(f, std::move(elems));
}

/// r x m matrix with rows b, b^q, b^{q^2}, ..., applied entrywise.
inline Matrix moore_matrix(const Basis& b, size_t r) {
    const FieldCtx& f = b.field();
    if (r < 1 || r > f.m()) fail(errc::row_count_out_of_range, "Moore row count must be in [1, m]");
    Matrix mo(f, r, f.m());
    std::vector<FFElem> row = b.elems();
    for (size_t i = 0; i < r; ++i) {
        for (size_t c = 0; c < f.m(); ++c) mo.at(i, c) = row[c];
        if (i + 1 < r)
            for (auto& e : row) e = e.frob(1);
    }
    return mo;
}

/// Gram matrix of the trace form: entry (i, j) is Tr(b_i * b_j), an element
/// of GF(q) represented inside the big field.
inline Matrix gram_matrix(const Basis& b) {
    const FieldCtx& f = b.field();
    unsigned m = f.m();
    Matrix g(f, m, m);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = i; j < m; ++j) {
            FFElem t = (b[i] * b[j]).trace();
            g.at(i, j) = t;
            g.at(j, i) = t;
        }
    return g;
}

inline bool is_self_dual(const Basis& b) {
    return gram_matrix(b) == Matrix::identity(b.field(), b.field().m());
}

/// Trace-dual basis: the unique basis with Tr(b_i * dual_j) = delta_ij.
/// Both characterizations are checked: the Moore matrix of the result is the
/// inverse transpose of the Moore matrix of b, and all m^2 trace pairings
/// are verified.
inline Basis dual_basis(const Basis& b) {
    const FieldCtx& f = b.field();
    unsigned m = f.m();
    Matrix mo = moore_matrix(b, m);
    Matrix moinv = inverse(mo);
    std::vector<FFElem> beta;
    for (unsigned c = 0; c < m; ++c) beta.push_back(moinv.at(c, 0));
    Basis dual(f, beta);
    if (moore_matrix(dual, m) != transpose(moinv))
        fail(errc::internal_invariant, "dual basis Moore matrix mismatch");
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) {
            FFElem t = (b[i] * dual[j]).trace();
            bool want_one = i == j;
            if (t != (want_one ? FFElem::one(f) : FFElem::zero(f)))
                fail(errc::internal_invariant, "trace pairing of dual basis is not the identity");
        }
    return dual;
}

/// Existence criterion for a self-dual basis of GF(q^m) over GF(q).
inline bool self_dual_exists(u64 q, unsigned m) { return q % 2 == 0 || m % 2 == 1; }
inline bool self_dual_exists(const FieldCtx& f) { return f.p() == 2 || f.m() % 2 == 1; }

/// Result of the self-dual construction: the new basis alpha, the Gram matrix
/// of the starting power basis, and the change-of-basis transform E over
/// GF(q) with alpha_i = sum_j E_ij beta_j and E * gram * E^T = I.
struct SelfDualTransform {
    Basis alpha;
    Matrix gram;
    Matrix transform;
};

namespace detail {

// Square root in GF(q) of an element known to lie in the subfield.
// Even characteristic: squaring is bijective, invert it by iterating the
// absolute Frobenius n-1 times. Odd: Euler/Tonelli-Shanks in the subgroup
// of order q-1, with the q = 3 mod 4 shortcut x^{(q+1)/4}.
inline bool is_square_subfield(const FFElem& x) {
    const FieldCtx& f = x.field();
    if (f.p() == 2 || x.is_zero()) return true;
    u64 q = f.q();
    FFElem e = x.pow((q - 1) / 2);
    return e == FFElem::one(f);
}

inline FFElem sqrt_subfield(const FFElem& x) {
    const FieldCtx& f = x.field();
    if (x.is_zero()) return x;
    if (f.p() == 2) {
        FFElem r = x;
        std::vector<u64> tmp(f.n());
        for (unsigned i = 0; i + 1 < f.n(); ++i) {
            f.frob_p_raw(r.coeffs(), tmp);
            r = FFElem(f, tmp);
        }
        if (r * r != x) fail(errc::internal_invariant, "char-2 square root failed");
        return r;
    }
    u64 q = f.q();
    if (!is_square_subfield(x)) fail(errc::internal_invariant, "square root of a non-square");
    FFElem r = FFElem::zero(f);
    if (q % 4 == 3) {
        r = x.pow((q + 1) / 4);
    } else {
        // Tonelli-Shanks inside the subgroup GF(q)*
        u64 t = q - 1;
        unsigned s = 0;
        while (t % 2 == 0) {
            t /= 2;
            ++s;
        }
        FFElem z = FFElem::zero(f);
        for (const FFElem& cand : subfield_elements(f))
            if (!cand.is_zero() && !is_square_subfield(cand)) {
                z = cand;
                break;
            }
        if (z.is_zero()) fail(errc::internal_invariant, "no non-square in GF(q)");
        FFElem c = z.pow(t);
        FFElem tt = x.pow(t);
        r = x.pow((t + 1) / 2);
        unsigned mexp = s;
        const FFElem one = FFElem::one(f);
        while (tt != one) {
            unsigned i = 0;
            FFElem probe = tt;
            while (probe != one) {
                probe = probe * probe;
                ++i;
                if (i >= mexp) fail(errc::internal_invariant, "Tonelli-Shanks diverged");
            }
            FFElem b = c;
            for (unsigned j = 0; j + i + 1 < mexp; ++j) b = b * b;
            mexp = i;
            c = b * b;
            tt = tt * c;
            r = r * b;
        }
    }
    if (r * r != x) fail(errc::internal_invariant, "square root verification failed");
    return r;
}

// Odd characteristic: symmetric congruence reduction of the Gram matrix,
// tracking the transform; returns E with E G E^T = I.
inline Matrix orthonormal_transform_odd(const FieldCtx& f, Matrix g) {
    unsigned m = unsigned(g.rows());
    Matrix e = Matrix::identity(f, m);
    const FFElem one = FFElem::one(f);
    auto add_row_to = [&](Matrix& mat, unsigned dst, unsigned src, const FFElem& c) {
        for (size_t k = 0; k < mat.cols(); ++k) mat.at(dst, k) += c * mat.at(src, k);
    };
    auto add_col_to = [&](Matrix& mat, unsigned dst, unsigned src, const FFElem& c) {
        for (size_t k = 0; k < mat.rows(); ++k) mat.at(k, dst) += c * mat.at(k, src);
    };
    for (unsigned i = 0; i < m; ++i) {
        if (g.at(i, i).is_zero()) {
            unsigned j = i + 1;
            while (j < m && g.at(j, j).is_zero()) ++j;
            if (j < m) {
                g.swap_rows(i, j);
                for (unsigned r = 0; r < m; ++r) std::swap(g.at(r, i), g.at(r, j));
                e.swap_rows(i, j);
            } else {
                // all trailing diagonal entries vanish; pick any nonzero pairing,
                // then row_i += row_j gives diagonal 2*g_ij != 0 in odd characteristic
                j = i + 1;
                while (j < m && g.at(i, j).is_zero()) ++j;
                if (j == m) fail(errc::internal_invariant, "degenerate trace form");
                add_row_to(g, i, j, one);
                add_col_to(g, i, j, one);
                add_row_to(e, i, j, one);
            }
        }
        FFElem d = g.at(i, i);
        for (unsigned r = i + 1; r < m; ++r) {
            if (g.at(r, i).is_zero()) continue;
            FFElem fct = g.at(r, i) * d.inv();
            for (size_t k = 0; k < m; ++k) g.at(r, k) -= fct * g.at(i, k);
            for (size_t k = 0; k < m; ++k) g.at(k, r) -= fct * g.at(k, i);
            for (size_t k = 0; k < m; ++k) e.at(r, k) -= fct * e.at(i, k);
        }
    }
    // normalize the diagonal to 1
    std::vector<unsigned> nonsquares;
    for (unsigned i = 0; i < m; ++i) {
        FFElem d = g.at(i, i);
        if (d.is_zero()) fail(errc::internal_invariant, "zero diagonal after congruence");
        if (is_square_subfield(d)) {
            FFElem s = sqrt_subfield(d).inv();
            for (unsigned k = 0; k < m; ++k) e.at(i, k) *= s;
            g.at(i, i) = one;
        } else {
            nonsquares.push_back(i);
        }
    }
    if (nonsquares.size() % 2 != 0)
        fail(errc::factorization_failed, "odd number of non-square diagonal entries");
    for (size_t t = 0; t + 1 < nonsquares.size(); t += 2) {
        unsigned i = nonsquares[t], j = nonsquares[t + 1];
        FFElem di = g.at(i, i), dj = g.at(j, j);
        // ratio of two non-squares is a square; rescale row j to share d_i
        FFElem s = sqrt_subfield(dj * di.inv()).inv();
        for (unsigned k = 0; k < m; ++k) e.at(j, k) *= s;
        // find x, y in GF(q) with x^2 + y^2 = 1/d_i (always solvable), then
        // rows (x*Ei + y*Ej, -y*Ei + x*Ej) are orthonormal for diag(d_i, d_i)
        FFElem target = di.inv();
        FFElem xs = FFElem::zero(f), ys = FFElem::zero(f);
        bool found = false;
        for (const FFElem& x : subfield_elements(f)) {
            FFElem rem = target - x * x;
            if (is_square_subfield(rem)) {
                xs = x;
                ys = sqrt_subfield(rem);
                found = true;
                break;
            }
        }
        if (!found) fail(errc::internal_invariant, "no sum-of-squares representation");
        std::vector<FFElem> ri(m), rj(m);
        for (unsigned k = 0; k < m; ++k) {
            ri[k] = xs * e.at(i, k) + ys * e.at(j, k);
            rj[k] = -(ys * e.at(i, k)) + xs * e.at(j, k);
        }
        for (unsigned k = 0; k < m; ++k) {
            e.at(i, k) = ri[k];
            e.at(j, k) = rj[k];
        }
    }
    return e;
}

// Even characteristic: orthonormalization of the trace form directly on
// field elements. Since Tr(w^2) = Tr(w)^2, a pivot with B(w, w) != 0 exists
// whenever some remaining vector has nonzero trace; when the remaining space
// is alternating, a hyperbolic pair (u, w) is merged with one finished
// orthonormal vector a via {a+u, a+w, a+u+w}, which are orthonormal again.
inline Matrix orthonormal_transform_even(const FieldCtx& f, const Basis& beta) {
    unsigned m = f.m();
    struct Entry {
        FFElem v;
        std::vector<FFElem> coords;  // over GF(q), w.r.t. beta
    };
    auto bilinear = [](const FFElem& x, const FFElem& y) { return (x * y).trace(); };
    auto axpy = [&](Entry& dst, const FFElem& c, const Entry& src) {
        dst.v += c * src.v;
        for (unsigned k = 0; k < dst.coords.size(); ++k) dst.coords[k] += c * src.coords[k];
    };
    auto scale = [&](Entry& x, const FFElem& c) {
        x.v *= c;
        for (auto& t : x.coords) t *= c;
    };
    std::vector<Entry> work, done;
    for (unsigned i = 0; i < m; ++i) {
        Entry en{beta[i], std::vector<FFElem>(m, FFElem::zero(f))};
        en.coords[i] = FFElem::one(f);
        work.push_back(std::move(en));
    }
    const FFElem one = FFElem::one(f);
    while (!work.empty()) {
        size_t idx = work.size();
        for (size_t i = 0; i < work.size(); ++i)
            if (!bilinear(work[i].v, work[i].v).is_zero()) {
                idx = i;
                break;
            }
        if (idx < work.size()) {
            Entry v = std::move(work[idx]);
            work.erase(work.begin() + long(idx));
            FFElem norm = bilinear(v.v, v.v);
            scale(v, sqrt_subfield(norm).inv());
            for (Entry& w : work) {
                FFElem t = bilinear(w.v, v.v);
                if (!t.is_zero()) axpy(w, t, v);  // char 2: subtraction is addition
            }
            done.push_back(std::move(v));
        } else {
            // remaining space is alternating; requires a finished vector
            if (done.empty())
                fail(errc::internal_invariant, "alternating trace form with no pivot available");
            Entry u = std::move(work.front());
            work.erase(work.begin());
            size_t j = work.size();
            for (size_t i = 0; i < work.size(); ++i)
                if (!bilinear(u.v, work[i].v).is_zero()) {
                    j = i;
                    break;
                }
            if (j == work.size()) fail(errc::internal_invariant, "degenerate alternating block");
            Entry w = std::move(work[j]);
            work.erase(work.begin() + long(j));
            scale(u, bilinear(u.v, w.v).inv());  // now B(u, w) = 1
            for (Entry& x : work) {
                FFElem cu = bilinear(x.v, w.v), cw = bilinear(x.v, u.v);
                if (!cu.is_zero()) axpy(x, cu, u);
                if (!cw.is_zero()) axpy(x, cw, w);
            }
            Entry a = std::move(done.back());
            done.pop_back();
            Entry r1 = a, r2 = a, r3 = a;
            axpy(r1, one, u);
            axpy(r2, one, w);
            axpy(r3, one, u);
            axpy(r3, one, w);
            done.push_back(std::move(r1));
            done.push_back(std::move(r2));
            done.push_back(std::move(r3));
        }
    }
    Matrix e(f, m, m);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned k = 0; k < m; ++k) e.at(i, k) = done[i].coords[k];
    return e;
}

}  // namespace detail

/// Constructs a self-dual basis over GF(q) starting from the power basis,
/// or reports that none exists. The Gram identity of the result is always
/// verified.
inline SelfDualTransform self_dual_transform(const FieldCtx& f) {
    if (!self_dual_exists(f))
        fail(errc::no_self_dual_basis,
             "no self-dual basis of GF(q^m) over GF(q): requires q even, or q and m both odd");
    Basis beta = power_basis(f);
    Matrix gram = gram_matrix(beta);
    Matrix e = f.p() == 2 ? detail::orthonormal_transform_even(f, beta)
                          : detail::orthonormal_transform_odd(f, gram);
    unsigned m = f.m();
    std::vector<FFElem> alpha(m, FFElem::zero(f));
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) alpha[i] += e.at(i, j) * beta[j];
    Basis a(f, std::move(alpha));
    if (!is_self_dual(a)) fail(errc::factorization_failed, "Gram identity verification failed");
    return {std::move(a), std::move(gram), std::move(e)};
}

inline Basis self_dual_basis(const FieldCtx& f) { return self_dual_transform(f).alpha; }

}  // namespace gabhull
