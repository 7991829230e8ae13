#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wcdp/core/element.hpp"
#include "wcdp/decomp/incidence_graph.hpp"
#include "wcdp/decomp/tree_decomposition.hpp"

namespace wcdp::decomp {

enum class NiceShape : std::uint8_t { kLeaf, kBranch, kIntroduce, kRemove };

struct NiceNode {
    NiceShape shape = NiceShape::kLeaf;
    Bag bag;
    std::optional<Vertex> vertex;  // the introduced or removed vertex
    std::vector<std::uint32_t> children;
    std::string label;
};

/// Rooted nice decomposition. Nodes are stored children-first, so index order is a post-order.
struct NiceDecomposition {
    std::vector<NiceNode> nodes;
    std::uint32_t root = 0;

    std::size_t node_count() const { return nodes.size(); }
    int width() const;
    /// The plain decomposition obtained by forgetting node shapes.
    TreeDecomposition underlying() const;
    std::optional<std::uint32_t> find_label(const std::string& label) const;
};

/// Roots `td` (at `root`, else td.root, else node 0) and inserts remove/introduce chains and branch
/// nodes so that every node is one of the four shapes, with empty root and leaf bags.
/// Within a chain, removals come first, then introductions, each in vertex-id order.
NiceDecomposition normalize(const TreeDecomposition& td, std::optional<std::uint32_t> root = std::nullopt);

/// Structural check of the nice-form invariants; returns the first violation.
std::optional<std::string> nice_violation(const NiceDecomposition& nd);

/// The eight node kinds of the DP.
enum class NodeKind : std::uint8_t { kL, kB, kAI, kAR, kRI, kRR, kCI, kCR };

NodeKind classify(const NiceNode& node, const IncidenceGraph& ig);
std::string node_kind_name(NodeKind kind);

}  // namespace wcdp::decomp
