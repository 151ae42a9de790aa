// Helpers shared by the test suites.
#pragma once

#include <random>

#include "gabhull/field.hpp"

namespace testutil {

using namespace gabhull;

// Runs fn and reports which error kind it threw, if any.
template <typename F>
std::optional<errc> thrown_code(F&& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    return std::nullopt;
}

inline FFElem random_elem(const FieldCtx& f, std::mt19937_64& rng) {
    std::vector<u64> c(f.n());
    for (auto& v : c) v = rng() % f.p();
    return FFElem(f, std::move(c));
}

// All elements of a small field, odometer order over coefficient vectors.
inline std::vector<FFElem> all_elements(const FieldCtx& f) {
    std::vector<FFElem> out;
    std::vector<u64> c(f.n(), 0);
    for (;;) {
        out.emplace_back(f, c);
        unsigned i = 0;
        while (i < f.n() && ++c[i] == f.p()) c[i++] = 0;
        if (i == f.n()) break;
    }
    return out;
}

}  // namespace testutil
