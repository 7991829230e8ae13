#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wcdp/decomp/graph.hpp"

namespace wcdp::decomp {

using Bag = std::vector<Vertex>;  // sorted, duplicate-free

/// Undirected tree of bags. Node labels are informational (imported bag ids, for traces).
struct TreeDecomposition {
    std::vector<Bag> bags;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::string> labels;  // empty or one per bag
    std::optional<std::uint32_t> root;

    std::size_t node_count() const { return bags.size(); }
    /// Largest bag size minus one; -1 for a decomposition without vertices.
    int width() const;
    std::vector<std::vector<std::uint32_t>> adjacency() const;
};

/// True iff the nodes form a tree and conditions (1)-(3) hold for `g`.
bool validate_td(const Graph& g, const TreeDecomposition& td);
/// Same as validate_td, with a reason on failure.
std::optional<std::string> td_violation(const Graph& g, const TreeDecomposition& td);

enum class Heuristic { kMinFill, kMinDegree };

std::optional<Heuristic> parse_heuristic(const std::string& name);
std::string heuristic_name(Heuristic h);

/// Elimination-ordering decomposition. Ties are broken by lowest vertex id, or randomly when a seed is given.
TreeDecomposition heuristic_decompose(const Graph& g, Heuristic heuristic = Heuristic::kMinFill,
                                      std::optional<std::uint64_t> seed = std::nullopt);

/// Decomposition built from a given elimination ordering (a permutation of all vertices).
TreeDecomposition decomposition_from_ordering(const Graph& g, const std::vector<Vertex>& ordering);

}  // namespace wcdp::decomp
