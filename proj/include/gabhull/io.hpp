// CSV and JSON emission/parsing for hull reports, quantum parameter tables,
// and code descriptions. Emitted files parse back to identical records.
#pragma once

#include "gabhull/eaqecc.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>
#include <sstream>

namespace gabhull {

using nlohmann::json;

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

inline u64 csv_u64(const std::string& s) {
    if (s.empty()) fail(errc::parse_error, "empty numeric field");
    u64 v = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9') fail(errc::parse_error, "bad numeric field: " + s);
        if (v > (std::numeric_limits<u64>::max() - u64(ch - '0')) / 10)
            fail(errc::parse_error, "numeric field overflow: " + s);
        v = v * 10 + u64(ch - '0');
    }
    return v;
}

inline bool csv_bool(const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    fail(errc::parse_error, "bad boolean field: " + s);
}

inline const char* bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace detail

inline constexpr const char* hull_csv_header =
    "p,h,m,k,e,dim_formula,dim_oracle,agree,classification";

inline void write_hull_csv(std::ostream& os, const std::vector<HullReport>& reports) {
    os << hull_csv_header << '\n';
    for (const HullReport& r : reports)
        os << r.p << ',' << r.h << ',' << r.m << ',' << r.k << ',' << r.e << ','
           << r.dim_formula << ',' << r.dim_oracle << ',' << detail::bool_str(r.agree) << ','
           << to_string(r.classification) << '\n';
}

inline std::vector<HullReport> read_hull_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) fail(errc::parse_error, "empty hull CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != hull_csv_header) fail(errc::parse_error, "unexpected hull CSV header: " + line);
    std::vector<HullReport> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto f = detail::split_csv_line(line);
        if (f.size() != 9) fail(errc::parse_error, "hull CSV row needs 9 fields");
        HullReport r;
        r.p = detail::csv_u64(f[0]);
        r.h = unsigned(detail::csv_u64(f[1]));
        r.m = unsigned(detail::csv_u64(f[2]));
        r.k = unsigned(detail::csv_u64(f[3]));
        r.e = unsigned(detail::csv_u64(f[4]));
        r.dim_formula = unsigned(detail::csv_u64(f[5]));
        r.dim_oracle = unsigned(detail::csv_u64(f[6]));
        r.agree = detail::csv_bool(f[7]);
        r.classification = classification_from_string(f[8]);
        out.push_back(std::move(r));
    }
    return out;
}

inline json hull_to_json(const std::vector<HullReport>& reports) {
    json arr = json::array();
    for (const HullReport& r : reports)
        arr.push_back({{"p", r.p},
                       {"h", r.h},
                       {"m", r.m},
                       {"k", r.k},
                       {"e", r.e},
                       {"dim_formula", r.dim_formula},
                       {"dim_oracle", r.dim_oracle},
                       {"agree", r.agree},
                       {"classification", to_string(r.classification)}});
    return arr;
}

inline std::vector<HullReport> hull_from_json(const json& arr) {
    if (!arr.is_array()) fail(errc::parse_error, "hull JSON must be an array");
    std::vector<HullReport> out;
    for (const json& j : arr) {
        HullReport r;
        r.p = j.at("p").get<u64>();
        r.h = j.at("h").get<unsigned>();
        r.m = j.at("m").get<unsigned>();
        r.k = j.at("k").get<unsigned>();
        r.e = j.at("e").get<unsigned>();
        r.dim_formula = j.at("dim_formula").get<unsigned>();
        r.dim_oracle = j.at("dim_oracle").get<unsigned>();
        r.agree = j.at("agree").get<bool>();
        r.classification = classification_from_string(j.at("classification").get<std::string>());
        out.push_back(std::move(r));
    }
    return out;
}

inline constexpr const char* eaqecc_csv_header =
    "p,m,e,k,hull_dim,n,k_q,d,c,singleton_equality,regime_validated,exceeds_grs_threshold";

namespace detail {

inline void require_table_provenance(const EaqeccParams& r) {
    if (!r.p || !r.source.e)
        fail(errc::unsupported, "row lacks field/Galois provenance required for emission");
}

}  // namespace detail

inline void write_eaqecc_csv(std::ostream& os, const std::vector<EaqeccParams>& rows) {
    os << eaqecc_csv_header << '\n';
    for (const EaqeccParams& r : rows) {
        detail::require_table_provenance(r);
        os << *r.p << ',' << r.source.m << ',' << *r.source.e << ',' << r.source.k << ','
           << r.source.hull_dim << ',' << r.n << ',' << r.k_q << ',' << r.d << ',' << r.c << ','
           << detail::bool_str(r.meets_singleton_with_equality) << ','
           << detail::bool_str(r.regime_validated) << ','
           << detail::bool_str(r.exceeds_grs_threshold) << '\n';
    }
}

inline std::vector<EaqeccParams> read_eaqecc_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) fail(errc::parse_error, "empty table CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != eaqecc_csv_header) fail(errc::parse_error, "unexpected table CSV header: " + line);
    std::vector<EaqeccParams> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto f = detail::split_csv_line(line);
        if (f.size() != 12) fail(errc::parse_error, "table CSV row needs 12 fields");
        EaqeccParams r;
        r.p = detail::csv_u64(f[0]);
        r.source.m = unsigned(detail::csv_u64(f[1]));
        r.source.e = unsigned(detail::csv_u64(f[2]));
        r.source.k = unsigned(detail::csv_u64(f[3]));
        r.source.hull_dim = unsigned(detail::csv_u64(f[4]));
        r.n = unsigned(detail::csv_u64(f[5]));
        r.k_q = unsigned(detail::csv_u64(f[6]));
        r.d = unsigned(detail::csv_u64(f[7]));
        r.c = unsigned(detail::csv_u64(f[8]));
        r.meets_singleton_with_equality = detail::csv_bool(f[9]);
        r.regime_validated = detail::csv_bool(f[10]);
        r.exceeds_grs_threshold = detail::csv_bool(f[11]);
        out.push_back(std::move(r));
    }
    return out;
}

inline json eaqecc_to_json(const std::vector<EaqeccParams>& rows) {
    json arr = json::array();
    for (const EaqeccParams& r : rows) {
        detail::require_table_provenance(r);
        arr.push_back({{"p", *r.p},
                       {"m", r.source.m},
                       {"e", *r.source.e},
                       {"k", r.source.k},
                       {"hull_dim", r.source.hull_dim},
                       {"n", r.n},
                       {"k_q", r.k_q},
                       {"d", r.d},
                       {"c", r.c},
                       {"singleton_equality", r.meets_singleton_with_equality},
                       {"regime_validated", r.regime_validated},
                       {"exceeds_grs_threshold", r.exceeds_grs_threshold}});
    }
    return arr;
}

inline std::vector<EaqeccParams> eaqecc_from_json(const json& arr) {
    if (!arr.is_array()) fail(errc::parse_error, "table JSON must be an array");
    std::vector<EaqeccParams> out;
    for (const json& j : arr) {
        EaqeccParams r;
        r.p = j.at("p").get<u64>();
        r.source.m = j.at("m").get<unsigned>();
        r.source.e = j.at("e").get<unsigned>();
        r.source.k = j.at("k").get<unsigned>();
        r.source.hull_dim = j.at("hull_dim").get<unsigned>();
        r.n = j.at("n").get<unsigned>();
        r.k_q = j.at("k_q").get<unsigned>();
        r.d = j.at("d").get<unsigned>();
        r.c = j.at("c").get<unsigned>();
        r.meets_singleton_with_equality = j.at("singleton_equality").get<bool>();
        r.regime_validated = j.at("regime_validated").get<bool>();
        r.exceeds_grs_threshold = j.at("exceeds_grs_threshold").get<bool>();
        out.push_back(std::move(r));
    }
    return out;
}

/// Matrices as nested arrays of little-endian coefficient vectors.
inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).coeffs());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json code_to_json(const GabidulinCode& c) {
    const FieldCtx& f = c.field();
    json basis = json::array();
    for (const FFElem& b : c.basis().elems()) basis.push_back(b.coeffs());
    return {{"p", f.p()},   {"h", f.h()},       {"m", f.m()},
            {"modulus", f.modulus()}, {"basis", basis}, {"k", c.k()}};
}

/// A deserialized code together with the field context that keeps its
/// elements valid.
struct LoadedCode {
    std::shared_ptr<const FieldCtx> field;
    GabidulinCode code;
};

inline LoadedCode code_from_json(const json& j) {
    u64 p = j.at("p").get<u64>();
    unsigned h = j.at("h").get<unsigned>();
    unsigned m = j.at("m").get<unsigned>();
    Poly modulus = j.at("modulus").get<Poly>();
    auto f = field_make(p, h * m, modulus, h);
    std::vector<FFElem> elems;
    for (const json& b : j.at("basis")) elems.emplace_back(*f, b.get<std::vector<u64>>());
    Basis basis(*f, std::move(elems));
    return {f, GabidulinCode(std::move(basis), j.at("k").get<unsigned>())};
}

}  // namespace gabhull
