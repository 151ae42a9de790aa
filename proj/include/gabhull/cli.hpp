#pragma once
// Command layer: a flag-shaped RunConfig plus one function per subcommand.
// Every command writes its artifact to a caller-supplied stream and returns a
// process exit code: 0 success, 1 verification failure, 2 usage/config error.
// All commands are deterministic; nothing in the library draws randomness.

#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <gabhull/basis.hpp>
#include <gabhull/eaqecc.hpp>
#include <gabhull/field.hpp>
#include <gabhull/gabidulin.hpp>
#include <gabhull/hull.hpp>
#include <gabhull/io.hpp>
#include <gabhull/linalg.hpp>
#include <gabhull/sweep.hpp>

namespace gabhull {

enum class Command {
    none,
    selfdual_basis,
    hull,
    verify_sweep,
    eaqecc_table,
    dual_gen,
    classify,
};

enum class OutputFormat { text, json, csv };

/// Input interpretation of the exponent e. `second_slot` is the native
/// convention of galois_dual_gen (conjugation acts on the second argument of
/// the pairing); `first_slot` places it on the first argument, and the two
/// duals coincide after the substitution e -> (m - e) mod m.
enum class DualConvention { second_slot, first_slot };

inline OutputFormat output_format_from_string(const std::string& s) {
    if (s == "text") return OutputFormat::text;
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    fail(errc::parse_error, "unknown format: " + s + " (expected text, json, or csv)");
}

inline DualConvention dual_convention_from_string(const std::string& s) {
    if (s == "theorem") return DualConvention::second_slot;
    if (s == "preliminaries") return DualConvention::first_slot;
    fail(errc::parse_error,
         "unknown dual convention: " + s + " (expected theorem or preliminaries)");
}

/// Inclusive integer range; flags accept "a" or "a..b".
struct Range {
    unsigned lo = 0;
    unsigned hi = 0;
    bool single() const { return lo == hi; }
};

inline Range parse_range(const std::string& text) {
    auto to_unsigned = [&](const std::string& tok) -> unsigned {
        try {
            size_t used = 0;
            unsigned long v = std::stoul(tok, &used);
            if (used != tok.size() || v > 0xffffffffUL)
                fail(errc::parse_error, "bad range bound: " + tok);
            return unsigned(v);
        } catch (const error&) {
            throw;
        } catch (const std::exception&) {
            fail(errc::parse_error, "bad range bound: " + tok);
        }
    };
    size_t dots = text.find("..");
    if (dots == std::string::npos) {
        unsigned v = to_unsigned(text);
        return {v, v};
    }
    Range r{to_unsigned(text.substr(0, dots)), to_unsigned(text.substr(dots + 2))};
    if (r.lo > r.hi) fail(errc::parse_error, "empty range: " + text);
    return r;
}

struct RunConfig {
    Command command = Command::none;
    // field spec
    u64 p = 0;
    unsigned h = 1;
    unsigned m = 0;
    std::string modulus;  // textual; parsed over GF(p); empty = context default
    std::string basis;    // user basis, elements separated by ';'; empty = constructed
    // instance spec
    std::optional<Range> k;
    std::optional<Range> e;
    // output
    OutputFormat format = OutputFormat::text;
    std::string out;      // output file; empty = primary stream
    std::string out_dir;  // default directory for relative out paths
    bool with_basis = false;
    // behavior
    DualConvention convention = DualConvention::second_slot;
    bool seedless = false;  // assert the run uses no randomness (always holds)
    // sweep budgets
    u64 max_qm = u64(1) << 20;
    u64 minor_budget = 100000;
    bool run_mds = true;
    unsigned threads = 0;
    // eaqecc
    bool paper_table1 = false;
};

/// Effective output path: relative --out values land in out_dir when set.
inline std::string resolve_out_path(const RunConfig& cfg) {
    if (cfg.out.empty()) return {};
    std::filesystem::path path(cfg.out);
    if (path.is_relative() && !cfg.out_dir.empty())
        path = std::filesystem::path(cfg.out_dir) / path;
    return path.string();
}

namespace detail {

inline std::shared_ptr<const FieldCtx> make_field(const RunConfig& cfg) {
    if (cfg.p == 0) fail(errc::parse_error, "field spec needs --p");
    if (cfg.m == 0) fail(errc::parse_error, "field spec needs --m");
    if (cfg.h == 0) fail(errc::parse_error, "--h must be positive");
    std::optional<Poly> modulus;
    if (!cfg.modulus.empty()) modulus = parse_poly(cfg.modulus, cfg.p);
    return field_make(cfg.p, cfg.h * cfg.m, std::move(modulus), cfg.h);
}

inline Basis make_basis(const RunConfig& cfg, const FieldCtx& f) {
    if (cfg.basis.empty()) return self_dual_basis(f);
    std::vector<FFElem> elems;
    size_t i = 0;
    while (i <= cfg.basis.size()) {
        size_t j = cfg.basis.find(';', i);
        if (j == std::string::npos) j = cfg.basis.size();
        elems.push_back(parse_element(f, cfg.basis.substr(i, j - i)));
        i = j + 1;
    }
    return Basis(f, std::move(elems));
}

/// Ranges validated against the instance bounds k in [1, m-1], e in [0, m-1].
inline Range krange(const RunConfig& cfg, unsigned m) {
    Range r = cfg.k.value_or(Range{1, m - 1});
    if (r.lo < 1 || r.hi > m - 1)
        fail(errc::out_of_range, "code dimension range must stay within [1, m-1]");
    return r;
}

inline Range erange(const RunConfig& cfg, unsigned m) {
    Range r = cfg.e.value_or(Range{0, m - 1});
    if (r.hi > m - 1) fail(errc::out_of_range, "exponent range must stay within [0, m-1]");
    return r;
}

inline unsigned single(const std::optional<Range>& r, const char* what) {
    if (!r) fail(errc::parse_error, std::string("missing required value for ") + what);
    if (!r->single())
        fail(errc::parse_error, std::string(what) + " must be a single value, not a range");
    return r->lo;
}

/// e as consumed by galois duals: the first-slot convention maps through
/// (m - e) mod m before dispatching.
inline unsigned effective_e(const RunConfig& cfg, unsigned e, unsigned m) {
    if (e > m - 1) fail(errc::out_of_range, "exponent must stay within [0, m-1]");
    if (cfg.convention == DualConvention::first_slot) return (m - e) % m;
    return e;
}

inline void print_matrix(std::ostream& os, const Matrix& mat, const std::string& indent) {
    for (size_t r = 0; r < mat.rows(); ++r) {
        os << indent << "[ ";
        for (size_t c = 0; c < mat.cols(); ++c) {
            if (c) os << ", ";
            os << element_to_string(mat.at(r, c));
        }
        os << " ]\n";
    }
}

inline void print_gfp_matrix(std::ostream& os, const std::vector<std::vector<u64>>& mat,
                             const std::string& indent) {
    for (const auto& row : mat) {
        os << indent << "[ ";
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) os << ", ";
            os << row[c];
        }
        os << " ]\n";
    }
}

inline std::string field_label(const RunConfig& cfg) {
    std::ostringstream os;
    os << "GF(" << cfg.p;
    if (cfg.h > 1) os << "^" << cfg.h;
    os << "^" << cfg.m << ")";
    std::string s = os.str();
    if (cfg.h > 1) {
        // GF((p^h)^m) reads better with explicit grouping
        s = "GF((" + std::to_string(cfg.p) + "^" + std::to_string(cfg.h) + ")^" +
            std::to_string(cfg.m) + ")";
    }
    return s;
}

inline const char* yesno(bool b) { return b ? "yes" : "no"; }

inline void require_not_csv(const RunConfig& cfg, const char* cmd) {
    if (cfg.format == OutputFormat::csv)
        fail(errc::unsupported,
             std::string(cmd) + " emits matrices; use --format text or json");
}

}  // namespace detail

// ---- selfdual-basis ----

inline int cmd_selfdual_basis(const RunConfig& cfg, std::ostream& out) {
    detail::require_not_csv(cfg, "selfdual-basis");
    auto fld = detail::make_field(cfg);
    const FieldCtx& f = *fld;
    SelfDualTransform t = self_dual_transform(f);

    // independent re-verification of the certificate for the transcript
    Matrix eget = mat_mul(mat_mul(t.transform, t.gram), transpose(t.transform));
    bool gram_identity = eget == Matrix::identity(f, f.m());
    bool pairings = is_self_dual(t.alpha);
    Matrix alpha_gram = gram_matrix(t.alpha);
    std::vector<std::vector<u64>> gram_rows(f.m(), std::vector<u64>(f.m()));
    for (unsigned r = 0; r < f.m(); ++r)
        for (unsigned c = 0; c < f.m(); ++c) {
            const FFElem& g = t.gram.at(r, c);
            for (unsigned i = 1; i < f.n(); ++i)
                if (g.coeffs()[i])
                    fail(errc::internal_invariant, "Gram entry outside the base subfield");
            gram_rows[r][c] = g.coeffs()[0];
        }
    std::vector<std::vector<u64>> transform_rows(f.m(), std::vector<u64>(f.m()));
    for (unsigned r = 0; r < f.m(); ++r)
        for (unsigned c = 0; c < f.m(); ++c)
            transform_rows[r][c] = t.transform.at(r, c).coeffs()[0];

    if (cfg.format == OutputFormat::json) {
        json j;
        j["p"] = cfg.p;
        j["h"] = cfg.h;
        j["m"] = cfg.m;
        j["modulus"] = poly_to_string(f.modulus());
        j["gram"] = gram_rows;
        j["transform"] = transform_rows;
        json basis = json::array();
        for (const FFElem& a : t.alpha.elems()) basis.push_back(element_to_string(a));
        j["basis"] = std::move(basis);
        j["basis_gram"] = matrix_to_json(alpha_gram);
        j["gram_identity"] = gram_identity;
        j["trace_pairings_identity"] = pairings;
        out << j.dump(2) << "\n";
    } else {
        out << "self-dual basis of " << detail::field_label(cfg) << " over GF(" << cfg.p;
        if (cfg.h > 1) out << "^" << cfg.h;
        out << "), modulus " << poly_to_string(f.modulus()) << "\n";
        out << "trace Gram matrix M of the power basis {1, w, ..., w^" << (f.m() - 1)
            << "}:\n";
        detail::print_gfp_matrix(out, gram_rows, "  ");
        out << "change of basis E (rows give alpha_i as combinations of the power basis):\n";
        detail::print_gfp_matrix(out, transform_rows, "  ");
        out << "basis alpha:\n";
        for (size_t i = 0; i < t.alpha.size(); ++i)
            out << "  alpha_" << (i + 1) << " = " << element_to_string(t.alpha[i]) << "\n";
        out << "E * M * E^T = identity: " << detail::yesno(gram_identity) << "\n";
        out << "trace pairings Tr(alpha_i * alpha_j):\n";
        detail::print_matrix(out, alpha_gram, "  ");
        out << "all pairings equal delta_ij: " << detail::yesno(pairings) << "\n";
    }
    return (gram_identity && pairings) ? 0 : 1;
}

// ---- hull ----

namespace detail {

inline std::vector<HullReport> hull_rows(const RunConfig& cfg, const FieldCtx& f,
                                         const Basis& b) {
    Range kr = krange(cfg, f.m());
    Range er = erange(cfg, f.m());
    std::vector<HullReport> rows;
    for (unsigned k = kr.lo; k <= kr.hi; ++k) {
        GabidulinCode code(b, k);
        for (unsigned e = er.lo; e <= er.hi; ++e)
            rows.push_back(hull_report(code, effective_e(cfg, e, f.m()), cfg.with_basis));
    }
    return rows;
}

inline void print_hull_text(std::ostream& out, const RunConfig& cfg,
                            const std::vector<HullReport>& rows) {
    if (cfg.convention == DualConvention::first_slot)
        out << "note: inputs use the first-slot pairing convention; reported e is the "
               "equivalent second-slot exponent (m - e_in) mod m\n";
    for (const HullReport& r : rows) {
        out << "p=" << r.p << " h=" << r.h << " m=" << r.m << " k=" << r.k << " e=" << r.e
            << "  hull dim: formula=" << r.dim_formula << " oracle=" << r.dim_oracle
            << " agree=" << detail::yesno(r.agree)
            << "  classification=" << to_string(r.classification);
        if (!r.formula_applies) out << "  (closed form not guaranteed: basis not self-dual)";
        out << "\n";
        if (r.basis && r.basis->rows() > 0) {
            out << "  hull basis rows:\n";
            print_matrix(out, *r.basis, "    ");
        } else if (r.basis) {
            out << "  hull basis rows: (empty; trivial hull)\n";
        }
    }
}

inline int emit_hull_rows(const RunConfig& cfg, std::ostream& out,
                          const std::vector<HullReport>& rows) {
    if (cfg.format == OutputFormat::csv) {
        write_hull_csv(out, rows);
    } else if (cfg.format == OutputFormat::json) {
        out << hull_to_json(rows).dump(2) << "\n";
    } else {
        print_hull_text(out, cfg, rows);
    }
    for (const HullReport& r : rows)
        if (r.formula_applies && !r.agree) return 1;
    return 0;
}

}  // namespace detail

inline int cmd_hull(const RunConfig& cfg, std::ostream& out) {
    auto fld = detail::make_field(cfg);
    Basis b = detail::make_basis(cfg, *fld);
    return detail::emit_hull_rows(cfg, out, detail::hull_rows(cfg, *fld, b));
}

// ---- classify ----

inline int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    auto fld = detail::make_field(cfg);
    unsigned k = detail::single(cfg.k, "--k");
    unsigned e = detail::single(cfg.e, "--e");
    Basis b = detail::make_basis(cfg, *fld);
    GabidulinCode code(b, k);
    HullReport r = hull_report(code, detail::effective_e(cfg, e, fld->m()), cfg.with_basis);
    if (cfg.format == OutputFormat::csv) {
        write_hull_csv(out, {r});
    } else if (cfg.format == OutputFormat::json) {
        out << hull_to_json({r}).dump(2) << "\n";
    } else {
        out << to_string(r.classification) << "\n";
        out << "hull dimension " << r.dim_oracle << " (closed form " << r.dim_formula
            << ", rank oracle " << r.dim_oracle << ", agree=" << detail::yesno(r.agree)
            << ")\n";
        if (!r.formula_applies)
            out << "note: closed form not guaranteed (basis not self-dual); the rank "
                   "oracle value is authoritative\n";
        if (r.basis && r.basis->rows() > 0) {
            out << "hull basis rows:\n";
            detail::print_matrix(out, *r.basis, "  ");
        }
    }
    return (r.formula_applies && !r.agree) ? 1 : 0;
}

// ---- dual-gen ----

inline int cmd_dual_gen(const RunConfig& cfg, std::ostream& out) {
    detail::require_not_csv(cfg, "dual-gen");
    auto fld = detail::make_field(cfg);
    const FieldCtx& f = *fld;
    unsigned k = detail::single(cfg.k, "--k");
    unsigned e_in = detail::single(cfg.e, "--e");
    unsigned e = detail::effective_e(cfg, e_in, f.m());
    Basis b = detail::make_basis(cfg, f);
    GabidulinCode code(b, k);
    Matrix dual = code.galois_dual_gen(e);
    Matrix oracle = code.galois_dual_oracle(e);

    // display verification: C * (D^[e])^T = 0 and both duals span the same space
    Matrix twisted = dual;
    for (size_t r = 0; r < twisted.rows(); ++r)
        for (size_t c = 0; c < twisted.cols(); ++c)
            twisted.at(r, c) = twisted.at(r, c).frob(e);
    bool annihilates = is_zero_matrix(mat_mul(code.generator(), transpose(twisted)));
    bool same_space = rank_of(stack(dual, oracle)) == dual.rows();

    if (cfg.format == OutputFormat::json) {
        json j;
        j["p"] = cfg.p;
        j["h"] = cfg.h;
        j["m"] = cfg.m;
        j["k"] = k;
        j["e"] = e;
        j["generator"] = matrix_to_json(code.generator());
        j["dual_generator"] = matrix_to_json(dual);
        j["annihilates_code"] = annihilates;
        j["matches_kernel_oracle"] = same_space;
        out << j.dump(2) << "\n";
    } else {
        out << "dual generator: " << detail::field_label(cfg) << " code of dimension " << k
            << ", pairing exponent e=" << e;
        if (e != e_in) out << " (from first-slot input e=" << e_in << ")";
        out << "\n";
        out << "generator rows:\n";
        detail::print_matrix(out, code.generator(), "  ");
        out << "dual generator rows (closed form):\n";
        detail::print_matrix(out, dual, "  ");
        out << "G * (D^[e])^T = 0: " << detail::yesno(annihilates) << "\n";
        out << "matches the kernel-built dual: " << detail::yesno(same_space) << "\n";
    }
    return (annihilates && same_space) ? 0 : 1;
}

// ---- verify-sweep ----

namespace detail {

inline void print_sweep_summary(std::ostream& out, const SweepResult& res) {
    out << "fields: " << res.fields << "\n";
    out << "instances: " << res.instances << "\n";
    out << "formula/oracle disagreements: " << res.disagreements << "\n";
    out << "classification-law violations: " << res.corollary_violations << "\n";
    out << "even-q Euclidean self-dual sightings: " << res.euclidean_selfdual_even_q << "\n";
    out << "distance checks: " << res.mds_checked << " verified, " << res.mds_failed
        << " failed, " << res.mds_skipped << " over budget\n";
    out << "classifications:\n";
    for (const auto& [name, count] : res.classification_counts)
        out << "  " << name << ": " << count << "\n";
    if (res.mds_skipped) {
        out << "distance checks skipped (minor count over budget):\n";
        for (const MdsAudit& a : res.mds_audits)
            if (a.status == MdsStatus::not_verified)
                out << "  p=" << a.p << " h=" << a.h << " m=" << a.m << " k=" << a.k << "\n";
    }
    out << "verdict: " << (res.clean() ? "all checks passed" : "FAILED") << "\n";
}

}  // namespace detail

inline int cmd_verify_sweep(const RunConfig& cfg, std::ostream& out) {
    SweepConfig sc;
    sc.max_qm = cfg.max_qm;
    sc.minor_budget = cfg.minor_budget;
    sc.run_mds = cfg.run_mds;
    sc.threads = cfg.threads;
    SweepResult res = run_sweep(sc);
    if (cfg.format == OutputFormat::csv) {
        write_hull_csv(out, res.reports);
    } else if (cfg.format == OutputFormat::json) {
        json j;
        j["fields"] = res.fields;
        j["instances"] = res.instances;
        j["disagreements"] = res.disagreements;
        j["corollary_violations"] = res.corollary_violations;
        j["euclidean_selfdual_even_q"] = res.euclidean_selfdual_even_q;
        j["mds_checked"] = res.mds_checked;
        j["mds_failed"] = res.mds_failed;
        j["mds_skipped"] = res.mds_skipped;
        j["classifications"] = res.classification_counts;
        j["clean"] = res.clean();
        j["reports"] = hull_to_json(res.reports);
        out << j.dump(2) << "\n";
    } else {
        detail::print_sweep_summary(out, res);
        out << "\n";
        write_hull_csv(out, res.reports);
    }
    return res.clean() ? 0 : 1;
}

// ---- eaqecc-table ----

inline int cmd_eaqecc_table(const RunConfig& cfg, std::ostream& out) {
    std::vector<EaqeccParams> rows;
    if (cfg.paper_table1) {
        rows = table_generate(builtin_table_specs());
    } else {
        if (cfg.p == 0) fail(errc::parse_error, "eaqecc-table needs --p (or --paper-table1)");
        if (cfg.m == 0) fail(errc::parse_error, "eaqecc-table needs --m (or --paper-table1)");
        u64 q = 1;
        for (unsigned i = 0; i < cfg.h; ++i) {
            if (q > (u64(1) << 40)) fail(errc::too_large, "subfield order q out of range");
            q *= cfg.p;
        }
        unsigned e = detail::single(cfg.e, "--e");
        Range kr = detail::krange(cfg, cfg.m);
        rows = table_generate({{q, cfg.m, detail::effective_e(cfg, e, cfg.m), kr.lo, kr.hi}});
    }
    if (cfg.format == OutputFormat::csv) {
        write_eaqecc_csv(out, rows);
    } else if (cfg.format == OutputFormat::json) {
        out << eaqecc_to_json(rows).dump(2) << "\n";
    } else {
        for (const EaqeccParams& r : rows) {
            out << "q=" << (r.p ? *r.p : 0) << " m=" << r.source.m << " e="
                << (r.source.e ? int(*r.source.e) : -1) << " k=" << r.source.k << "  [["
                << r.n << ", " << r.k_q << ", " << r.d << "; " << r.c << "]]"
                << "  singleton-equality=" << detail::yesno(r.meets_singleton_with_equality)
                << " regime-ok=" << detail::yesno(r.regime_validated);
            if (r.grs_threshold)
                out << " grs-threshold=" << *r.grs_threshold
                    << " exceeds=" << detail::yesno(r.exceeds_grs_threshold);
            out << "\n";
        }
    }
    return 0;
}

// ---- dispatch ----

inline int run_command(const RunConfig& cfg, std::ostream& out) {
    try {
        switch (cfg.command) {
            case Command::selfdual_basis: return cmd_selfdual_basis(cfg, out);
            case Command::hull: return cmd_hull(cfg, out);
            case Command::verify_sweep: return cmd_verify_sweep(cfg, out);
            case Command::eaqecc_table: return cmd_eaqecc_table(cfg, out);
            case Command::dual_gen: return cmd_dual_gen(cfg, out);
            case Command::classify: return cmd_classify(cfg, out);
            case Command::none: fail(errc::parse_error, "no command selected");
        }
        fail(errc::internal_invariant, "unhandled command");
    } catch (const error& err) {
        out << "error: " << err.what() << "\n";
        return err.code() == errc::internal_invariant ? 1 : 2;
    }
}

}  // namespace gabhull
