// Exact arithmetic in prime fields GF(p) and extension fields GF(p^n),
// with subfield structure GF(q) < GF(q^m) for q = p^h, Frobenius maps and
// the relative trace. Elements are dense coefficient vectors over GF(p)
// in the polynomial basis of a monic irreducible modulus.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gabhull {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

enum class errc {
    not_prime,
    reducible_modulus,
    division_by_zero,
    field_mismatch,
    singular,
    shape_mismatch,
    no_self_dual_basis,
    factorization_failed,
    dimension_out_of_range,
    full_dimension,
    row_count_out_of_range,
    too_large,
    out_of_range,
    invalid_hull_dim,
    odd_length,
    internal_invariant,
    parse_error,
    unsupported,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

// Little-endian coefficient vector over GF(p); index i holds the x^i coefficient.
using Poly = std::vector<u64>;

namespace detail {

inline u64 addm(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}

inline u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

inline u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

inline u64 powm(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}

inline u64 inv_mod(u64 a, u64 p) {
    if (a % p == 0) fail(errc::division_by_zero, "inverse of 0 mod p");
    // extended Euclid on (p, a); p prime
    std::int64_t t0 = 0, t1 = 1;
    u64 r0 = p, r1 = a % p;
    while (r1 != 0) {
        u64 q = r0 / r1;
        u64 r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        std::int64_t t2 = t0 - std::int64_t(q) * t1;
        t0 = t1;
        t1 = t2;
    }
    std::int64_t t = t0 % std::int64_t(p);
    if (t < 0) t += std::int64_t(p);
    return u64(t);
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 s : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % s == 0) return n == s;
    }
    // deterministic Miller-Rabin for 64-bit with the standard base set
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powm(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulm(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// ---- polynomials over GF(p), little-endian ----

inline int poly_deg(const Poly& a) {
    int d = int(a.size()) - 1;
    while (d >= 0 && a[size_t(d)] == 0) --d;
    return d;
}

inline void poly_trim(Poly& a) { a.resize(size_t(poly_deg(a) + 1)); }

inline Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = addm(c[i + j], mulm(a[i], b[j], p), p);
    }
    poly_trim(c);
    return c;
}

// num = q*den + r; den nonzero
inline void poly_divmod(const Poly& num, const Poly& den, u64 p, Poly& q, Poly& r) {
    int dd = poly_deg(den);
    if (dd < 0) fail(errc::division_by_zero, "polynomial division by zero");
    r = num;
    poly_trim(r);
    int dn = poly_deg(r);
    q.assign(dn >= dd ? size_t(dn - dd + 1) : 0, 0);
    u64 lead_inv = inv_mod(den[size_t(dd)], p);
    while (dn >= dd) {
        u64 c = mulm(r[size_t(dn)], lead_inv, p);
        q[size_t(dn - dd)] = c;
        for (int j = 0; j <= dd; ++j)
            r[size_t(dn - dd + j)] = subm(r[size_t(dn - dd + j)], mulm(c, den[size_t(j)], p), p);
        dn = poly_deg(r);
    }
    poly_trim(r);
}

inline Poly poly_mod(const Poly& num, const Poly& den, u64 p) {
    Poly q, r;
    poly_divmod(num, den, p, q, r);
    return r;
}

inline Poly poly_gcd(Poly a, Poly b, u64 p) {
    poly_trim(a);
    poly_trim(b);
    while (poly_deg(b) >= 0) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    int d = poly_deg(a);
    if (d >= 0) {
        u64 s = inv_mod(a[size_t(d)], p);
        for (auto& c : a) c = mulm(c, s, p);
    }
    return a;
}

inline Poly poly_powmod(Poly base, u64 e, const Poly& f, u64 p) {
    Poly r{1};
    base = poly_mod(base, f, p);
    while (e) {
        if (e & 1) r = poly_mod(poly_mul(r, base, p), f, p);
        base = poly_mod(poly_mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

// f monic of degree n >= 1. Tests gcd(x^{p^i} - x, f) = 1 for i <= n/2 and
// x^{p^n} == x mod f.
inline bool poly_is_irreducible(const Poly& f, u64 p) {
    int n = poly_deg(f);
    if (n < 1) return false;
    if (n == 1) return true;
    Poly x{0, 1};
    Poly r = poly_mod(x, f, p);
    for (int i = 1; i <= n; ++i) {
        r = poly_powmod(r, p, f, p);  // now r = x^{p^i} mod f
        if (i <= n / 2) {
            Poly diff = r;
            if (diff.size() < 2) diff.resize(2, 0);
            diff[1] = subm(diff[1], 1, p);
            Poly g = poly_gcd(diff, f, p);
            if (poly_deg(g) > 0) return false;
        }
    }
    // after the loop r = x^{p^n} mod f
    Poly xr = poly_mod(x, f, p);
    poly_trim(r);
    return r == xr;
}

// Lexicographically smallest monic irreducible of degree n over GF(p),
// ordering coefficient tuples (c_0, ..., c_{n-1}) low-degree-first.
inline Poly default_irreducible(u64 p, unsigned n) {
    if (n == 1) return Poly{0, 1};  // f = x, the prime field itself
    std::vector<u64> tail(n, 0);    // tail[i] = c_i; c_0 starts at 1 (c_0 = 0 is reducible)
    tail[0] = 1;
    for (;;) {
        Poly f(tail);
        f.push_back(1);
        if (poly_is_irreducible(f, p)) return f;
        // next tuple in lex order: last coordinate varies fastest
        int i = int(n) - 1;
        while (i >= 0) {
            if (++tail[size_t(i)] < p) break;
            tail[size_t(i)] = 0;
            --i;
        }
        if (i < 0) fail(errc::internal_invariant, "no irreducible polynomial found");
    }
}

// ---- dense GF(p) matrices (row-major, scalar entries) ----

struct PMat {
    unsigned rows = 0, cols = 0;
    std::vector<u64> a;  // rows*cols

    PMat() = default;
    PMat(unsigned r, unsigned c) : rows(r), cols(c), a(size_t(r) * c, 0) {}
    u64& at(unsigned r, unsigned c) { return a[size_t(r) * cols + c]; }
    u64 at(unsigned r, unsigned c) const { return a[size_t(r) * cols + c]; }
    static PMat identity(unsigned n) {
        PMat m(n, n);
        for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    bool operator==(const PMat&) const = default;
};

inline PMat pmat_mul(const PMat& A, const PMat& B, u64 p) {
    PMat C(A.rows, B.cols);
    if (p == 2) {
        // pack rows of B into words and accumulate with xors
        unsigned w = (B.cols + 63) / 64;
        std::vector<u64> bp(size_t(B.rows) * w, 0);
        for (unsigned r = 0; r < B.rows; ++r)
            for (unsigned c = 0; c < B.cols; ++c)
                if (B.at(r, c)) bp[size_t(r) * w + c / 64] |= u64(1) << (c % 64);
        std::vector<u64> acc(w);
        for (unsigned r = 0; r < A.rows; ++r) {
            std::fill(acc.begin(), acc.end(), 0);
            for (unsigned k = 0; k < A.cols; ++k)
                if (A.at(r, k))
                    for (unsigned j = 0; j < w; ++j) acc[j] ^= bp[size_t(k) * w + j];
            for (unsigned c = 0; c < B.cols; ++c) C.at(r, c) = (acc[c / 64] >> (c % 64)) & 1;
        }
        return C;
    }
    bool small = p < (u64(1) << 28);
    for (unsigned r = 0; r < A.rows; ++r)
        for (unsigned c = 0; c < B.cols; ++c) {
            if (small) {
                u64 s = 0;
                for (unsigned k = 0; k < A.cols; ++k) s += A.at(r, k) * B.at(k, c);
                C.at(r, c) = s % p;
            } else {
                u64 s = 0;
                for (unsigned k = 0; k < A.cols; ++k) s = addm(s, mulm(A.at(r, k), B.at(k, c), p), p);
                C.at(r, c) = s;
            }
        }
    return C;
}

inline void pmat_vec(const PMat& M, std::span<const u64> v, std::span<u64> out, u64 p) {
    bool small = p < (u64(1) << 28);
    for (unsigned r = 0; r < M.rows; ++r) {
        u64 s = 0;
        if (small) {
            for (unsigned c = 0; c < M.cols; ++c) s += M.at(r, c) * v[c];
            s %= p;
        } else {
            for (unsigned c = 0; c < M.cols; ++c) s = addm(s, mulm(M.at(r, c), v[c], p), p);
        }
        out[r] = s;
    }
}

// Gaussian elimination over GF(p); returns rank, reduces M in place to rref.
inline unsigned pmat_rref(PMat& M, u64 p) {
    unsigned rank = 0;
    for (unsigned col = 0; col < M.cols && rank < M.rows; ++col) {
        unsigned piv = rank;
        while (piv < M.rows && M.at(piv, col) == 0) ++piv;
        if (piv == M.rows) continue;
        for (unsigned c = 0; c < M.cols; ++c) std::swap(M.at(rank, c), M.at(piv, c));
        u64 s = inv_mod(M.at(rank, col), p);
        for (unsigned c = 0; c < M.cols; ++c) M.at(rank, c) = mulm(M.at(rank, c), s, p);
        for (unsigned r = 0; r < M.rows; ++r) {
            if (r == rank || M.at(r, col) == 0) continue;
            u64 f = M.at(r, col);
            for (unsigned c = 0; c < M.cols; ++c)
                M.at(r, c) = subm(M.at(r, c), mulm(f, M.at(rank, c), p), p);
        }
        ++rank;
    }
    return rank;
}

// Basis of the right null space {x : Mx = 0}; each returned row is one kernel vector.
inline std::vector<std::vector<u64>> pmat_kernel(PMat M, u64 p) {
    unsigned cols = M.cols;
    unsigned rank = pmat_rref(M, p);
    std::vector<unsigned> pivot_col(rank);
    std::vector<bool> is_pivot(cols, false);
    for (unsigned r = 0, c = 0; r < rank; ++r) {
        while (M.at(r, c) == 0) ++c;
        pivot_col[r] = c;
        is_pivot[c] = true;
    }
    std::vector<std::vector<u64>> basis;
    for (unsigned c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<u64> v(cols, 0);
        v[c] = 1;
        for (unsigned r = 0; r < rank; ++r) v[pivot_col[r]] = subm(0, M.at(r, c), p);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline PMat pmat_inverse(const PMat& M, u64 p) {
    unsigned n = M.rows;
    PMat aug(n, 2 * n);
    for (unsigned r = 0; r < n; ++r) {
        for (unsigned c = 0; c < n; ++c) aug.at(r, c) = M.at(r, c);
        aug.at(r, n + r) = 1;
    }
    if (pmat_rref(aug, p) != n) fail(errc::singular, "singular GF(p) matrix");
    PMat inv(n, n);
    for (unsigned r = 0; r < n; ++r)
        for (unsigned c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
    return inv;
}

}  // namespace detail

/// Immutable descriptor of GF(p^n) with subfield marker h | n, so that the
/// field is GF(q^m) over GF(q) with q = p^h and m = n/h. Construction
/// precomputes the Frobenius power maps and the relative trace as GF(p)-linear
/// maps; all element operations are pure and the context is safe to share
/// across threads.
class FieldCtx {
public:
    FieldCtx(u64 p, unsigned n, std::optional<Poly> modulus = std::nullopt, unsigned h = 1)
        : p_(p), n_(n), h_(h) {
        if (!detail::is_prime_u64(p)) fail(errc::not_prime, "characteristic is not prime: " + std::to_string(p));
        if (n == 0) fail(errc::out_of_range, "degree must be positive");
        if (h == 0 || n % h != 0) fail(errc::out_of_range, "subfield degree h must divide n");
        m_ = n / h;
        if (modulus) {
            Poly f = *modulus;
            detail::poly_trim(f);
            if (detail::poly_deg(f) != int(n) || f[n] != 1)
                fail(errc::reducible_modulus, "modulus must be monic of degree n");
            for (u64 c : f)
                if (c >= p) fail(errc::out_of_range, "modulus coefficient out of range");
            if (!detail::poly_is_irreducible(f, p))
                fail(errc::reducible_modulus, "modulus polynomial is reducible");
            modulus_ = std::move(f);
        } else {
            modulus_ = detail::default_irreducible(p, n);
        }
        small_p_ = p < (u64(1) << 28);
        if (p_ == 2) {
            words_ = (n_ + 63) / 64;
            mod_packed_.assign(words_ + 1, 0);
            for (unsigned i = 0; i <= n_; ++i)
                if (modulus_[i]) mod_packed_[i / 64] |= u64(1) << (i % 64);
        }
        build_frobenius();
        if (n_ > 1) subfield_ctx_ = std::make_shared<const FieldCtx>(p_, h_);
        if (h_ > 1) build_subfield_embedding();
    }

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

    u64 p() const { return p_; }
    unsigned n() const { return n_; }
    unsigned h() const { return h_; }
    unsigned m() const { return m_; }
    const Poly& modulus() const { return modulus_; }

    /// Subfield order q = p^h; throws when it does not fit in 63 bits.
    u64 q() const {
        u64 q = 1;
        for (unsigned i = 0; i < h_; ++i) {
            if (q > (u64(1) << 62) / p_) fail(errc::unsupported, "subfield order exceeds 2^62");
            q *= p_;
        }
        return q;
    }

    /// Field order p^n if it fits, otherwise nullopt.
    std::optional<u64> order() const {
        u64 s = 1;
        for (unsigned i = 0; i < n_; ++i) {
            if (s > (u64(1) << 62) / p_) return std::nullopt;
            s *= p_;
        }
        return s;
    }

    // ---- raw coefficient-vector operations ----

    void add_raw(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
        for (unsigned i = 0; i < n_; ++i) out[i] = detail::addm(a[i], b[i], p_);
    }
    void sub_raw(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
        for (unsigned i = 0; i < n_; ++i) out[i] = detail::subm(a[i], b[i], p_);
    }
    void neg_raw(std::span<const u64> a, std::span<u64> out) const {
        for (unsigned i = 0; i < n_; ++i) out[i] = a[i] == 0 ? 0 : p_ - a[i];
    }

    void mul_raw(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
        if (p_ == 2) {
            mul_packed(a, b, out);
            return;
        }
        thread_local std::vector<u64> buf;
        buf.assign(2 * size_t(n_) - 1, 0);
        if (small_p_) {
            for (unsigned i = 0; i < n_; ++i) {
                if (a[i] == 0) continue;
                for (unsigned j = 0; j < n_; ++j) buf[i + j] += a[i] * b[j];
            }
            for (auto& v : buf) v %= p_;
        } else {
            for (unsigned i = 0; i < n_; ++i) {
                if (a[i] == 0) continue;
                for (unsigned j = 0; j < n_; ++j)
                    buf[i + j] = detail::addm(buf[i + j], detail::mulm(a[i], b[j], p_), p_);
            }
        }
        for (unsigned d = 2 * n_ - 2; d >= n_; --d) {
            u64 t = buf[d];
            if (t == 0) continue;
            buf[d] = 0;
            u64 neg = p_ - t;
            for (unsigned j = 0; j < n_; ++j) {
                if (modulus_[j] == 0) continue;
                u64 add = small_p_ ? neg * modulus_[j] % p_ : detail::mulm(neg, modulus_[j], p_);
                buf[d - n_ + j] = detail::addm(buf[d - n_ + j], add, p_);
            }
            if (d == n_) break;
        }
        for (unsigned i = 0; i < n_; ++i) out[i] = buf[i];
    }

    void inv_raw(std::span<const u64> a, std::span<u64> out) const {
        Poly r0 = modulus_, r1(a.begin(), a.end());
        detail::poly_trim(r1);
        if (r1.empty()) fail(errc::division_by_zero, "inverse of zero field element");
        Poly t0{}, t1{1};
        while (detail::poly_deg(r1) >= 0) {
            Poly q, r2;
            detail::poly_divmod(r0, r1, p_, q, r2);
            Poly t2 = t0;  // t2 = t0 - q*t1
            Poly qt = detail::poly_mul(q, t1, p_);
            if (t2.size() < qt.size()) t2.resize(qt.size(), 0);
            for (size_t i = 0; i < qt.size(); ++i) t2[i] = detail::subm(t2[i], qt[i], p_);
            r0 = std::move(r1);
            r1 = std::move(r2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        // r0 = gcd = nonzero constant since the modulus is irreducible
        u64 s = detail::inv_mod(r0[0], p_);
        std::fill(out.begin(), out.end(), 0);
        Poly t = detail::poly_mod(t0, modulus_, p_);
        for (size_t i = 0; i < t.size(); ++i) out[i] = detail::mulm(t[i], s, p_);
    }

    /// x -> x^{q^e}; e is reduced mod m.
    void frob_raw(std::span<const u64> a, u64 e, std::span<u64> out) const {
        detail::pmat_vec(frob_q_pow_[size_t(e % m_)], a, out, p_);
    }

    /// x -> x^p, one application of the absolute Frobenius.
    void frob_p_raw(std::span<const u64> a, std::span<u64> out) const {
        detail::pmat_vec(frob_p_, a, out, p_);
    }

    void trace_raw(std::span<const u64> a, std::span<u64> out) const {
        detail::pmat_vec(trace_mat_, a, out, p_);
    }

    const detail::PMat& frob_q_matrix() const { return frob_q_pow_[1 % m_]; }

    // GF(p)-basis of the subfield GF(q) inside this field (h coefficient vectors).
    const std::vector<std::vector<u64>>& subfield_gfp_basis() const { return subfield_basis_; }

    std::shared_ptr<const FieldCtx> subfield_ctx() const {
        if (n_ == 1) fail(errc::unsupported, "prime field has no proper canonical subfield context");
        return subfield_ctx_;
    }

    bool in_subfield(std::span<const u64> a) const {
        thread_local std::vector<u64> t;
        t.assign(n_, 0);
        frob_raw(a, 1, t);
        for (unsigned i = 0; i < n_; ++i)
            if (t[i] != a[i]) return false;
        return true;
    }

    // Canonical coordinates of a GF(q) element w.r.t. the canonical degree-h
    // representation GF(p)[y]/(g) with g the default irreducible of degree h.
    std::vector<u64> subfield_coords(std::span<const u64> a) const {
        if (!in_subfield(a)) fail(errc::out_of_range, "element does not lie in GF(q)");
        if (h_ == 1) return {a[0]};
        if (embed_solver_.rows == 0) fail(errc::unsupported, "subfield coordinates unavailable for this field size");
        std::vector<u64> rhs(n_);
        detail::pmat_vec(embed_solver_, a, rhs, p_);
        std::vector<u64> coords(h_);
        for (unsigned j = 0; j < h_; ++j) coords[j] = rhs[embed_pivot_rows_[j]];
        return coords;
    }

    // Image in this field of canonical GF(q) coordinates.
    std::vector<u64> embed_subfield(std::span<const u64> coords) const {
        std::vector<u64> out(n_, 0);
        if (h_ == 1) {
            out[0] = coords[0] % p_;
            return out;
        }
        if (embed_powers_.empty()) fail(errc::unsupported, "subfield embedding unavailable for this field size");
        for (unsigned j = 0; j < h_; ++j)
            for (unsigned i = 0; i < n_; ++i)
                out[i] = detail::addm(out[i], detail::mulm(coords[j] % p_, embed_powers_[j][i], p_), p_);
        return out;
    }

private:
    void mul_packed(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
        thread_local std::vector<u64> pa, pb, acc;
        unsigned w = words_;
        pa.assign(w, 0);
        pb.assign(w, 0);
        acc.assign(2 * w, 0);
        for (unsigned i = 0; i < n_; ++i) {
            if (a[i] & 1) pa[i / 64] |= u64(1) << (i % 64);
            if (b[i] & 1) pb[i / 64] |= u64(1) << (i % 64);
        }
        // carryless schoolbook: acc ^= pb << i for each set bit i of pa
        for (unsigned i = 0; i < n_; ++i) {
            if (!((pa[i / 64] >> (i % 64)) & 1)) continue;
            unsigned ws = i / 64, bs = i % 64;
            for (unsigned j = 0; j < w; ++j) {
                acc[j + ws] ^= pb[j] << bs;
                if (bs) acc[j + ws + 1] ^= pb[j] >> (64 - bs);
            }
        }
        // reduce modulo the packed modulus (degree n, monic)
        for (unsigned d = 2 * n_ - 2; d >= n_; --d) {
            if (!((acc[d / 64] >> (d % 64)) & 1)) continue;
            unsigned s = d - n_, ws = s / 64, bs = s % 64;
            for (unsigned j = 0; j <= words_; ++j) {
                if (j + ws >= acc.size()) break;
                acc[j + ws] ^= mod_packed_[j] << bs;
                if (bs && j + ws + 1 < acc.size()) acc[j + ws + 1] ^= mod_packed_[j] >> (64 - bs);
            }
            if (d == n_) break;
        }
        for (unsigned i = 0; i < n_; ++i) out[i] = (acc[i / 64] >> (i % 64)) & 1;
    }

    void build_frobenius() {
        using namespace detail;
        // matrix of x -> x^p in the monomial basis: column c holds coords of (g^c)^p
        PMat F(n_, n_);
        Poly xp = poly_powmod(Poly{0, 1}, p_, modulus_, p_);
        Poly col{1};
        for (unsigned c = 0; c < n_; ++c) {
            for (size_t i = 0; i < col.size(); ++i) F.at(unsigned(i), c) = col[i];
            if (c + 1 < n_) col = poly_mod(poly_mul(col, xp, p_), modulus_, p_);
        }
        frob_p_ = F;
        PMat Fq = F;
        for (unsigned i = 1; i < h_; ++i) Fq = pmat_mul(Fq, F, p_);
        frob_q_pow_.clear();
        frob_q_pow_.push_back(PMat::identity(n_));
        for (unsigned j = 1; j < m_; ++j) frob_q_pow_.push_back(pmat_mul(frob_q_pow_.back(), Fq, p_));
        if (m_ == 1) frob_q_pow_.push_back(Fq);  // keep F_q itself addressable
        trace_mat_ = PMat(n_, n_);
        for (unsigned j = 0; j < m_; ++j)
            for (size_t i = 0; i < trace_mat_.a.size(); ++i)
                trace_mat_.a[i] = addm(trace_mat_.a[i], frob_q_pow_[j].a[i], p_);
        // subfield = fixed space of F_q
        PMat FqI = frob_q_pow_[1];
        for (unsigned i = 0; i < n_; ++i) FqI.at(i, i) = subm(FqI.at(i, i), 1, p_);
        subfield_basis_ = pmat_kernel(FqI, p_);
        if (subfield_basis_.size() != h_)
            fail(errc::internal_invariant, "subfield dimension mismatch");
    }

    void build_subfield_embedding() {
        using namespace detail;
        // find a root of the canonical degree-h modulus among GF(q) elements;
        // feasible only at desk scale, which is all this is used for
        u64 q = 1;
        bool huge = false;
        for (unsigned i = 0; i < h_; ++i) {
            if (q > (u64(1) << 20)) {
                huge = true;
                break;
            }
            q *= p_;
        }
        if (huge || q > (u64(1) << 20)) return;  // coords will report unsupported
        const Poly& g = subfield_ctx_->modulus();
        std::vector<u64> root(n_, 0);
        bool found = false;
        std::vector<u64> cand(n_), acc(n_), tmp(n_);
        for (u64 idx = 0; idx < q && !found; ++idx) {
            std::fill(cand.begin(), cand.end(), 0);
            u64 t = idx;
            for (unsigned j = 0; j < h_; ++j) {
                u64 c = t % p_;
                t /= p_;
                if (c)
                    for (unsigned i = 0; i < n_; ++i)
                        cand[i] = addm(cand[i], mulm(c, subfield_basis_[j][i], p_), p_);
            }
            // Horner evaluation of g at cand
            std::fill(acc.begin(), acc.end(), 0);
            for (int d = int(h_); d >= 0; --d) {
                mul_raw(acc, cand, tmp);
                acc = tmp;
                acc[0] = addm(acc[0], g[size_t(d)], p_);
            }
            bool zero = true;
            for (u64 v : acc)
                if (v) {
                    zero = false;
                    break;
                }
            if (zero) {
                root = cand;
                found = true;
            }
        }
        if (!found) fail(errc::internal_invariant, "no root of canonical subfield modulus");
        // powers 1, z, ..., z^{h-1} and a solver for coordinates
        embed_powers_.assign(h_, std::vector<u64>(n_, 0));
        embed_powers_[0][0] = 1;
        for (unsigned j = 1; j < h_; ++j) mul_raw(embed_powers_[j - 1], root, embed_powers_[j]);
        // row-reduce [Z | I] where Z has the powers as columns; record transform
        PMat aug(n_, h_ + n_);
        for (unsigned r = 0; r < n_; ++r) {
            for (unsigned c = 0; c < h_; ++c) aug.at(r, c) = embed_powers_[c][r];
            aug.at(r, h_ + r) = 1;
        }
        pmat_rref(aug, p_);
        // the Z block has independent columns, so its part of the rref must
        // reduce to the identity padded with zero rows
        for (unsigned r = 0; r < n_; ++r)
            for (unsigned c = 0; c < h_; ++c)
                if (aug.at(r, c) != (r == c ? 1u : 0u))
                    fail(errc::internal_invariant, "subfield embedding is degenerate");
        embed_pivot_rows_.assign(h_, 0);
        for (unsigned j = 0; j < h_; ++j) embed_pivot_rows_[j] = j;
        embed_solver_ = PMat(n_, n_);
        for (unsigned r = 0; r < n_; ++r)
            for (unsigned c = 0; c < n_; ++c) embed_solver_.at(r, c) = aug.at(r, h_ + c);
    }

    u64 p_;
    unsigned n_, h_, m_;
    Poly modulus_;
    bool small_p_ = true;
    unsigned words_ = 0;
    std::vector<u64> mod_packed_;
    detail::PMat frob_p_;
    std::vector<detail::PMat> frob_q_pow_;
    detail::PMat trace_mat_;
    std::vector<std::vector<u64>> subfield_basis_;
    std::shared_ptr<const FieldCtx> subfield_ctx_;
    std::vector<std::vector<u64>> embed_powers_;
    detail::PMat embed_solver_;
    std::vector<unsigned> embed_pivot_rows_;
};

/// Element of GF(p^n): a coefficient vector over GF(p) tied to its context.
class FFElem {
public:
    FFElem() = default;
    FFElem(const FieldCtx& f, std::vector<u64> coeffs) : f_(&f), c_(std::move(coeffs)) {
        if (c_.size() != f.n()) fail(errc::shape_mismatch, "coefficient vector length mismatch");
        for (u64 v : c_)
            if (v >= f.p()) fail(errc::out_of_range, "coefficient out of range");
    }

    static FFElem zero(const FieldCtx& f) { return FFElem(f, std::vector<u64>(f.n(), 0)); }
    static FFElem one(const FieldCtx& f) {
        std::vector<u64> c(f.n(), 0);
        c[0] = 1 % f.p();
        return FFElem(f, std::move(c));
    }
    /// The residue class of x, the polynomial-basis generator.
    static FFElem gen(const FieldCtx& f) {
        std::vector<u64> c(f.n(), 0);
        if (f.n() == 1) {
            // x reduces to a constant modulo a linear modulus
            c[0] = detail::subm(0, f.modulus()[0], f.p());
        } else {
            c[1] = 1;
        }
        return FFElem(f, std::move(c));
    }
    static FFElem from_u64(const FieldCtx& f, u64 v) {
        std::vector<u64> c(f.n(), 0);
        c[0] = v % f.p();
        return FFElem(f, std::move(c));
    }

    const FieldCtx& field() const {
        if (!f_) fail(errc::internal_invariant, "use of default-constructed element");
        return *f_;
    }
    const std::vector<u64>& coeffs() const { return c_; }
    // Mutable view for fused in-place updates in the linear algebra kernels;
    // callers must keep entries reduced mod p.
    std::vector<u64>& mutable_coeffs() { return c_; }
    bool is_zero() const {
        for (u64 v : c_)
            if (v) return false;
        return true;
    }

    friend FFElem operator+(const FFElem& a, const FFElem& b) {
        a.check_same(b);
        FFElem r = a;
        a.field().add_raw(a.c_, b.c_, r.c_);
        return r;
    }
    friend FFElem operator-(const FFElem& a, const FFElem& b) {
        a.check_same(b);
        FFElem r = a;
        a.field().sub_raw(a.c_, b.c_, r.c_);
        return r;
    }
    friend FFElem operator*(const FFElem& a, const FFElem& b) {
        a.check_same(b);
        FFElem r = a;
        a.field().mul_raw(a.c_, b.c_, r.c_);
        return r;
    }
    FFElem operator-() const {
        FFElem r = *this;
        field().neg_raw(c_, r.c_);
        return r;
    }
    FFElem& operator+=(const FFElem& b) {
        check_same(b);
        field().add_raw(c_, b.c_, c_);
        return *this;
    }
    FFElem& operator-=(const FFElem& b) {
        check_same(b);
        field().sub_raw(c_, b.c_, c_);
        return *this;
    }
    FFElem& operator*=(const FFElem& b) {
        check_same(b);
        field().mul_raw(c_, b.c_, c_);
        return *this;
    }
    friend bool operator==(const FFElem& a, const FFElem& b) { return a.f_ == b.f_ && a.c_ == b.c_; }

    FFElem inv() const {
        FFElem r = *this;
        field().inv_raw(c_, r.c_);
        return r;
    }

    FFElem pow(u64 e) const {
        FFElem r = FFElem::one(field());
        FFElem base = *this;
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    /// a^{q^e} with q = p^h; e arbitrary nonnegative, reduced mod m.
    FFElem frob(u64 e) const {
        FFElem r = *this;
        field().frob_raw(c_, e, r.c_);
        return r;
    }

    /// Relative trace to GF(q): sum of a^{q^i}, i = 0..m-1. The result is
    /// verified to be Frobenius-fixed.
    FFElem trace() const {
        FFElem r = *this;
        field().trace_raw(c_, r.c_);
        if (!field().in_subfield(r.c_))
            fail(errc::internal_invariant, "trace value not fixed by the q-Frobenius");
        return r;
    }

    /// Trace as an element of the canonical GF(q) context.
    FFElem trace_subfield() const {
        FFElem t = trace();
        const FieldCtx& f = field();
        if (f.n() == 1) return t;
        auto coords = f.subfield_coords(t.c_);
        return FFElem(*f.subfield_ctx(), std::move(coords));
    }

private:
    void check_same(const FFElem& b) const {
        if (f_ != b.f_) fail(errc::field_mismatch, "elements from different field contexts");
    }

    const FieldCtx* f_ = nullptr;
    std::vector<u64> c_;
};

/// field_make: convenience factory mirroring the CLI field spec.
inline std::shared_ptr<const FieldCtx> field_make(u64 p, unsigned n,
                                                  std::optional<Poly> modulus = std::nullopt,
                                                  unsigned h = 1) {
    return std::make_shared<const FieldCtx>(p, n, std::move(modulus), h);
}

/// All q elements of the subfield GF(q), enumerated deterministically over
/// GF(p)-coordinates. Desk scale only.
inline std::vector<FFElem> subfield_elements(const FieldCtx& f) {
    u64 q = f.q();
    if (q > (u64(1) << 20)) fail(errc::too_large, "subfield too large to enumerate");
    const auto& basis = f.subfield_gfp_basis();
    std::vector<FFElem> out;
    out.reserve(size_t(q));
    std::vector<u64> digits(f.h(), 0), coeffs(f.n());
    for (u64 idx = 0; idx < q; ++idx) {
        std::fill(coeffs.begin(), coeffs.end(), 0);
        for (unsigned j = 0; j < f.h(); ++j) {
            if (digits[j] == 0) continue;
            for (unsigned i = 0; i < f.n(); ++i)
                coeffs[i] = detail::addm(coeffs[i], detail::mulm(digits[j], basis[j][i], f.p()), f.p());
        }
        out.emplace_back(f, coeffs);
        unsigned j = 0;
        while (j < f.h() && ++digits[j] == f.p()) digits[j++] = 0;
    }
    return out;
}

// ---- text formats ----

/// Parses "x^4+x+1" style polynomials (symbol x or w) and "[1,1,0,0,1]"
/// little-endian coefficient lists.
inline Poly parse_poly(const std::string& text, u64 p) {
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) fail(errc::parse_error, "empty polynomial");
    auto to_u64 = [](const std::string& tok, size_t* used = nullptr) -> u64 {
        try {
            return std::stoull(tok, used);
        } catch (const std::exception&) {
            fail(errc::parse_error, "bad integer in polynomial: " + tok);
        }
    };
    Poly out;
    auto set_coeff = [&](size_t deg, u64 c) {
        if (deg > 4096) fail(errc::parse_error, "polynomial degree out of range");
        if (out.size() <= deg) out.resize(deg + 1, 0);
        out[deg] = detail::addm(out[deg], c % p, p);
    };
    if (s.front() == '[') {
        if (s.back() != ']') fail(errc::parse_error, "unterminated coefficient list");
        size_t i = 1, deg = 0;
        while (i < s.size() - 1) {
            size_t j = s.find(',', i);
            if (j == std::string::npos || j > s.size() - 1) j = s.size() - 1;
            std::string tok = s.substr(i, j - i);
            if (tok.empty()) fail(errc::parse_error, "empty coefficient");
            set_coeff(deg++, to_u64(tok));
            i = j + 1;
        }
        if (out.empty()) out.push_back(0);
        return out;
    }
    size_t i = 0;
    while (i < s.size()) {
        size_t j = s.find('+', i);
        if (j == std::string::npos) j = s.size();
        std::string term = s.substr(i, j - i);
        if (term.empty()) fail(errc::parse_error, "empty term in polynomial");
        u64 coeff = 1;
        size_t k = 0;
        if (isdigit(static_cast<unsigned char>(term[0]))) {
            size_t e = 0;
            coeff = to_u64(term, &e);
            k = e;
            if (k < term.size() && term[k] == '*') ++k;
        }
        size_t deg = 0;
        if (k < term.size()) {
            char sym = term[k];
            if (sym != 'x' && sym != 'w') fail(errc::parse_error, "unknown symbol in term: " + term);
            ++k;
            deg = 1;
            if (k < term.size()) {
                if (term[k] != '^') fail(errc::parse_error, "expected ^ in term: " + term);
                deg = size_t(to_u64(term.substr(k + 1)));
                k = term.size();
            }
        } else if (k != term.size()) {
            fail(errc::parse_error, "malformed term: " + term);
        }
        set_coeff(deg, coeff);
        i = j + 1;
    }
    if (out.empty()) out.push_back(0);
    return out;
}

inline std::string poly_to_string(const Poly& f, char sym = 'x') {
    int d = detail::poly_deg(f);
    if (d < 0) return "0";
    std::string s;
    for (int i = d; i >= 0; --i) {
        u64 c = f[size_t(i)];
        if (c == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0) {
            s += std::to_string(c);
        } else {
            if (c != 1) s += std::to_string(c) + "*";
            s += sym;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

/// Paper-style printing: power-of-w sums over GF(2^n)/GF(2), coefficient
/// lists otherwise.
inline std::string element_to_string(const FFElem& a) {
    const FieldCtx& f = a.field();
    if (f.p() == 2 && f.h() == 1) return poly_to_string(a.coeffs(), 'w');
    std::string s = "[";
    for (unsigned i = 0; i < f.n(); ++i) {
        if (i) s += ",";
        s += std::to_string(a.coeffs()[i]);
    }
    return s + "]";
}

inline FFElem parse_element(const FieldCtx& f, const std::string& text) {
    Poly c = parse_poly(text, f.p());
    if (c.size() > f.n()) {
        // reduce modulo the field modulus so w^6 etc. are accepted
        c = detail::poly_mod(c, f.modulus(), f.p());
    }
    c.resize(f.n(), 0);
    return FFElem(f, std::move(c));
}

}  // namespace gabhull
