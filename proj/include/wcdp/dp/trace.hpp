#pragma once

#include <ostream>
#include <string>

#include "wcdp/dp/solver.hpp"

namespace wcdp::dp {

/// `(n3, {p1}, {c1}, {}, [c1, p1], {(c1,1)}, {(c1,0)}, ({}, {p1}, {c1}, {}, {(c1,0)}))`
std::string format_assignment(const NodeContext& ctx, const std::string& label, const BagAssignment& a);

/// `Node n3: (c1-CI)`, `Node n1: (L)`
std::string format_node_header(const NodeContext& ctx, const std::string& label);

/// Every node in post-order: header, then its entries sorted by their text. Needs keep_tables.
void write_trace(const DpSolver& solver, std::ostream& out);

}  // namespace wcdp::dp
