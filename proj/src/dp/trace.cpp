#include "wcdp/dp/trace.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace wcdp::dp {

namespace {

using F = BagAssignment;

std::string element_set(const NodeContext& ctx, const BagAssignment& a, std::uint32_t flag) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (!a.has(i, flag)) continue;
        if (!first) out += ", ";
        out += ctx.program().element_name(ctx.bag()[i]);
        first = false;
    }
    return out + "}";
}

/// Pairs (c,v) over bag constraints carrying `only` (all constraints when only == 0).
template <class Value>
std::string count_map(const NodeContext& ctx, const BagAssignment& a, std::uint32_t only, Value value) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (!ctx.bag()[i].is_constraint()) continue;
        if (only != 0 && !a.has(i, only)) continue;
        if (!first) out += ", ";
        out += "(" + ctx.program().element_name(ctx.bag()[i]) + "," + std::to_string(value(i)) + ")";
        first = false;
    }
    return out + "}";
}

}  // namespace

std::string format_assignment(const NodeContext& ctx, const std::string& label, const BagAssignment& a) {
    std::ostringstream out;
    out << '(' << label << ", " << element_set(ctx, a, F::kM) << ", " << element_set(ctx, a, F::kC) << ", "
        << element_set(ctx, a, F::kR) << ", [";
    for (std::size_t i = 0; i < a.order_size(); ++i) {
        if (i) out << ", ";
        out << ctx.program().element_name(a.order_at(i));
    }
    out << "], " << count_map(ctx, a, 0, [&](std::size_t i) { return a.rho(i); }) << ", "
        << count_map(ctx, a, F::kC, [&](std::size_t i) { return a.lambda(i); }) << ", ("
        << element_set(ctx, a, F::kRD) << ", " << element_set(ctx, a, F::kAD) << ", " << element_set(ctx, a, F::kHD)
        << ", " << element_set(ctx, a, F::kBD) << ", "
        << count_map(ctx, a, F::kHD, [&](std::size_t i) { return a.has(i, F::kPhi) ? 1 : 0; }) << "))";
    return out.str();
}

std::string format_node_header(const NodeContext& ctx, const std::string& label) {
    std::string kind = decomp::node_kind_name(ctx.kind());
    if (ctx.element()) kind = ctx.program().element_name(*ctx.element()) + "-" + kind;
    return "Node " + label + ": (" + kind + ")";
}

void write_trace(const DpSolver& solver, std::ostream& out) {
    const auto& nd = solver.decomposition();
    for (std::uint32_t i = 0; i < nd.node_count(); ++i) {
        const auto& ctx = solver.context(i);
        const auto& label = nd.nodes[i].label;
        out << format_node_header(ctx, label) << '\n';
        std::vector<std::string> lines;
        for (const auto& a : solver.table(i)) lines.push_back(format_assignment(ctx, label, a));
        std::sort(lines.begin(), lines.end());
        for (const auto& l : lines) out << l << '\n';
        out << '\n';
    }
}

}  // namespace wcdp::dp
