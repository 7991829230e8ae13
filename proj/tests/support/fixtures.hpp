#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wcdp/core/program.hpp"
#include "wcdp/decomp/incidence_graph.hpp"
#include "wcdp/decomp/nice_decomposition.hpp"
#include "wcdp/decomp/tree_decomposition.hpp"
#include "wcdp/io/program_text.hpp"

#ifndef WCDP_TEST_DATA
#define WCDP_TEST_DATA "tests/data"
#endif

namespace wcdp::testing {

inline std::string data_path(std::string_view name) { return std::string(WCDP_TEST_DATA) + "/" + std::string(name); }

inline Program example1() { return io::parse_program_file(data_path("example1.wcp")); }
inline Program example2() { return io::parse_program_file(data_path("example2.wcp")); }

inline Interpretation interp(const Program& p, std::initializer_list<std::string_view> names) {
    Interpretation i(p.atom_count());
    for (auto n : names) i.insert(*p.find_atom(n));
    return i;
}

inline std::vector<std::string> names_of(const Program& p, const std::vector<Interpretation>& sets) {
    std::vector<std::string> out;
    for (const auto& i : sets) out.push_back(format_interpretation(p, i));
    return out;
}

/// Nice decomposition of p's incidence graph by a heuristic.
inline decomp::NiceDecomposition nice_of(const Program& p, decomp::Heuristic h = decomp::Heuristic::kMinFill,
                                         std::optional<std::uint64_t> seed = std::nullopt) {
    decomp::IncidenceGraph ig(p);
    return decomp::normalize(decomp::heuristic_decompose(ig.graph(), h, seed));
}

/// The first `n` atoms of `i` (transforms keep original atom ids in front).
inline Interpretation restrict_to(const Interpretation& i, std::size_t n) {
    Interpretation out(n);
    for (auto a : i.members())
        if (a.value < n) out.insert(a);
    return out;
}

template <class Entries>
std::set<std::vector<std::uint32_t>> word_set(const Entries& entries) {
    std::set<std::vector<std::uint32_t>> out;
    for (const auto& e : entries) out.insert(e.words());
    return out;
}

}  // namespace wcdp::testing
