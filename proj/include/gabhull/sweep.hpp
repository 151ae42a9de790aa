// Exhaustive verification driver: enumerate every extension GF(q^m) with a
// self-dual basis up to a size budget, evaluate both hull dimension paths
// for all (k, e), audit the classification corollaries, and run the MDS
// minor check where its budget allows.
#pragma once

#include "gabhull/io.hpp"

#include <atomic>
#include <future>
#include <map>
#include <thread>

namespace gabhull {

struct FieldTriple {
    u64 p = 0;
    unsigned h = 0;
    unsigned m = 0;
};

/// All (p, h, m) with q = p^h, m >= 2, q^m within the budget, and a
/// self-dual basis of GF(q^m) over GF(q); ascending by (p, h, m).
inline std::vector<FieldTriple> sweep_fields(u64 max_qm = u64(1) << 20) {
    std::vector<FieldTriple> out;
    for (u64 p = 2; p <= max_qm / p; ++p) {
        if (!detail::is_prime_u64(p)) continue;
        u64 q = p;
        unsigned h = 1;
        while (q <= max_qm / q) {  // room for at least m = 2
            u64 qm = q * q;
            unsigned m = 2;
            while (true) {
                if (self_dual_exists(q, m)) out.push_back({p, h, m});
                if (qm > max_qm / q) break;
                qm *= q;
                ++m;
            }
            q *= p;
            ++h;
        }
    }
    return out;
}

enum class MdsStatus { passed, failed, not_verified };

inline std::string to_string(MdsStatus s) {
    switch (s) {
        case MdsStatus::passed: return "passed";
        case MdsStatus::failed: return "failed";
        case MdsStatus::not_verified: return "not-verified";
    }
    fail(errc::internal_invariant, "unknown MDS status");
}

struct MdsAudit {
    u64 p = 0;
    unsigned h = 0;
    unsigned m = 0;
    unsigned k = 0;
    MdsStatus status = MdsStatus::not_verified;
};

struct SweepConfig {
    u64 max_qm = u64(1) << 20;
    u64 minor_budget = 100000;
    bool run_mds = true;
    unsigned threads = 0;  // 0 picks the hardware concurrency
};

struct SweepResult {
    std::vector<HullReport> reports;  // sorted by (p, h, m, k, e)
    std::vector<MdsAudit> mds_audits;
    size_t fields = 0;
    size_t instances = 0;
    size_t disagreements = 0;         // formula vs oracle
    size_t corollary_violations = 0;  // LCD / self-orthogonal / self-dual laws
    size_t euclidean_selfdual_even_q = 0;
    size_t mds_checked = 0;
    size_t mds_failed = 0;
    size_t mds_skipped = 0;
    std::map<std::string, size_t> classification_counts;

    bool clean() const {
        return disagreements == 0 && corollary_violations == 0 &&
               euclidean_selfdual_even_q == 0 && mds_failed == 0;
    }
};

namespace detail {

struct FieldOutcome {
    std::vector<HullReport> reports;
    std::vector<MdsAudit> mds;
    size_t disagreements = 0;
    size_t corollary_violations = 0;
    size_t euclidean_selfdual_even_q = 0;
};

inline FieldOutcome sweep_one_field(const FieldTriple& ft, const SweepConfig& cfg) {
    FieldOutcome out;
    FieldCtx f(ft.p, ft.h * ft.m, std::nullopt, ft.h);
    Basis alpha = self_dual_basis(f);
    bool even_q = ft.p == 2;
    unsigned m = ft.m;
    for (unsigned k = 1; k < m; ++k) {
        GabidulinCode code(alpha, k);
        if (cfg.run_mds) {
            MdsAudit audit{ft.p, ft.h, ft.m, k, MdsStatus::not_verified};
            try {
                audit.status = is_mds(code, cfg.minor_budget) ? MdsStatus::passed
                                                              : MdsStatus::failed;
            } catch (const error& err) {
                if (err.code() != errc::too_large) throw;
            }
            out.mds.push_back(audit);
        }
        for (unsigned e = 0; e < m; ++e) {
            HullReport r;
            r.p = ft.p;
            r.h = ft.h;
            r.m = m;
            r.k = k;
            r.e = e;
            r.dim_formula = hull_dim_formula(m, k, e);
            r.dim_oracle = hull_dim_oracle(code, e);
            r.agree = r.dim_formula == r.dim_oracle;
            r.formula_applies = true;  // the sweep constructs self-dual bases only
            r.classification = classification_from_dims(m, k, r.dim_oracle);
            if (!r.agree) ++out.disagreements;
            bool lcd = r.classification == Classification::lcd;
            if (lcd != (e == 0)) ++out.corollary_violations;
            if (2 * k <= m) {
                bool so = r.classification == Classification::self_orthogonal_proper ||
                          r.classification == Classification::self_dual;
                if (so != (k <= e && e <= m - k)) ++out.corollary_violations;
            }
            bool sd = r.classification == Classification::self_dual;
            if (sd != (2 * k == m && 2 * e == m)) ++out.corollary_violations;
            if (r.dim_oracle > std::min(k, m - k)) ++out.corollary_violations;
            if (even_q && e == 0 && sd) ++out.euclidean_selfdual_even_q;
            out.reports.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace detail

inline SweepResult run_sweep(const SweepConfig& cfg = {}) {
    std::vector<FieldTriple> fields = sweep_fields(cfg.max_qm);
    std::vector<detail::FieldOutcome> outcomes(fields.size());
    unsigned threads = cfg.threads ? cfg.threads
                                   : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, unsigned(std::max<size_t>(fields.size(), 1)));
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < fields.size(); i = next.fetch_add(1))
            outcomes[i] = detail::sweep_one_field(fields[i], cfg);
    };
    std::vector<std::future<void>> futs;
    for (unsigned t = 1; t < threads; ++t)
        futs.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& fu : futs) fu.get();

    SweepResult res;
    res.fields = fields.size();
    for (auto& oc : outcomes) {
        res.disagreements += oc.disagreements;
        res.corollary_violations += oc.corollary_violations;
        res.euclidean_selfdual_even_q += oc.euclidean_selfdual_even_q;
        for (auto& r : oc.reports) {
            ++res.instances;
            ++res.classification_counts[to_string(r.classification)];
            res.reports.push_back(std::move(r));
        }
        for (auto& a : oc.mds) {
            if (a.status == MdsStatus::not_verified)
                ++res.mds_skipped;
            else {
                ++res.mds_checked;
                if (a.status == MdsStatus::failed) ++res.mds_failed;
            }
            res.mds_audits.push_back(a);
        }
    }
    auto key = [](const HullReport& r) { return std::tuple(r.p, r.h, r.m, r.k, r.e); };
    std::sort(res.reports.begin(), res.reports.end(),
              [&](const HullReport& a, const HullReport& b) { return key(a) < key(b); });
    std::sort(res.mds_audits.begin(), res.mds_audits.end(), [](const MdsAudit& a, const MdsAudit& b) {
        return std::tuple(a.p, a.h, a.m, a.k) < std::tuple(b.p, b.h, b.m, b.k);
    });
    return res;
}

}  // namespace gabhull
