#pragma once

#include <cstdint>
#include <istream>
#include <tuple>
#include <optional>
#include <string>
#include <vector>

#include "wcdp/core/program.hpp"
#include "wcdp/decomp/graph.hpp"
#include "wcdp/decomp/tree_decomposition.hpp"
#include "wcdp/transforms/unary.hpp"

namespace wcdp::transforms {

/// Partition instance X ↦ ({a_i}, {c}, {(c, ∅)}) with c = ({(a_i, x_i)}, S/2, S/2).
/// Throws RejectionError when Σ X is odd.
Program partition_to_pwc(const std::vector<std::uint64_t>& values);

/// Independent check: does some sub-multiset of `values` sum to half the total?
bool partition_has_solution(const std::vector<std::uint64_t>& values);

/// Brute force over all subsets (at most 30 values): indices of one half, if any.
std::optional<std::vector<std::size_t>> partition_find_subset(const std::vector<std::uint64_t>& values);

struct MmoEdge {
    std::uint32_t u = 0;  // vertex indices into MmoInstance::vertices, u < v
    std::uint32_t v = 0;
    std::uint32_t weight = 1;
};

/// Minimum-maximum-outdegree instance. Vertex ids are kept in ascending order; that order decides
/// which orientation an edge atom encodes.
struct MmoInstance {
    std::vector<std::int64_t> vertices;
    std::vector<MmoEdge> edges;
    std::uint64_t bound = 0;
};

/// Builds an instance from `u v w` triples (plus isolated vertex ids). Throws RejectionError on loops,
/// repeated edges or zero weights.
MmoInstance make_mmo(const std::vector<std::int64_t>& isolated,
                     const std::vector<std::tuple<std::int64_t, std::int64_t, std::uint32_t>>& edges,
                     std::uint64_t bound);

/// Reads lines `u v w` and optional `v <id>` lines; `#` starts a comment.
MmoInstance read_mmo_graph(std::istream& in, std::uint64_t bound);

/// The weighted program: atom a_u_v per edge (true: oriented u→v), c_v = (S_v, 0, r), r_v = (c_v, ∅).
/// Throws RejectionError when an edge is heavier than a positive bound.
Program mmo_to_pwc(const MmoInstance& inst);

/// mmo_to_pwc followed by the unary transform.
UnaryTransform mmo_to_pcc(const MmoInstance& inst);

/// Decomposition of the weighted program from one of the graph (vertex i = MmoInstance::vertices[i]):
/// v becomes c_v, and bags {c_u, c_v, a_uv} and {c_v, r_v} are attached. Width ≤ max(2, width(td)).
decomp::TreeDecomposition mmo_td_extension(const MmoInstance& inst, const decomp::TreeDecomposition& graph_td);

/// The instance's graph with vertices 0..n-1.
decomp::Graph mmo_graph(const MmoInstance& inst);

/// Independent check by trying all 2^|E| orientations.
bool mmo_has_orientation(const MmoInstance& inst);

/// Same search; bit i of the result set means edge i is oriented u→v.
std::optional<std::uint64_t> mmo_find_orientation(const MmoInstance& inst);

}  // namespace wcdp::transforms
