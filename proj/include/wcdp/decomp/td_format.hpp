#pragma once

#include <istream>
#include <optional>
#include <string>

#include "wcdp/core/program.hpp"
#include "wcdp/decomp/incidence_graph.hpp"
#include "wcdp/decomp/tree_decomposition.hpp"

namespace wcdp::decomp {

/// PACE-style text:
///   s td <#bags> <width+1> <#vertices>
///   b <bag-id> <vertex-id>...
///   <bag-id> <bag-id>
/// Ids are 1-based. Comment lines start with `c`; `c root <bag-id>` selects the root, and the writer
/// adds a legend `c <vertex-id> <atom|constraint|rule> <name>`.
/// Imported bags are labelled n<bag-id>.
TreeDecomposition read_pace(std::istream& in, std::optional<std::size_t> expected_vertices = std::nullopt);
TreeDecomposition read_pace_file(const std::string& path, std::optional<std::size_t> expected_vertices = std::nullopt);

std::string write_pace(const TreeDecomposition& td, std::size_t vertex_count);
std::string write_pace(const TreeDecomposition& td, const IncidenceGraph& ig, const Program& p);

}  // namespace wcdp::decomp
