#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "wcdp/core/element.hpp"
#include "wcdp/core/program.hpp"
#include "wcdp/decomp/graph.hpp"

namespace wcdp::decomp {

/// Labels of an incidence edge. Atom–constraint edges carry polarity and weight
/// (an atom may occur with both polarities in one clause); constraint–rule edges carry head/body roles.
struct EdgeLabel {
    bool positive = false;
    bool negative = false;
    std::uint32_t positive_weight = 0;
    std::uint32_t negative_weight = 0;
    bool head = false;
    bool body = false;

    bool operator==(const EdgeLabel&) const = default;
};

/// Incidence graph over A ∪ C ∪ R. Vertices are numbered atoms first, then constraints, then rules.
class IncidenceGraph {
public:
    IncidenceGraph() = default;
    explicit IncidenceGraph(const Program& p);

    const Graph& graph() const { return graph_; }
    std::size_t vertex_count() const { return graph_.vertex_count(); }
    std::size_t edge_count() const { return graph_.edge_count(); }

    Element element(Vertex v) const;
    Vertex vertex(Element e) const;
    const EdgeLabel& label(Vertex u, Vertex v) const;

    std::size_t atom_count() const { return atoms_; }
    std::size_t constraint_count() const { return constraints_; }
    std::size_t rule_count() const { return rules_; }

private:
    Graph graph_;
    std::size_t atoms_ = 0;
    std::size_t constraints_ = 0;
    std::size_t rules_ = 0;
    std::map<std::pair<Vertex, Vertex>, EdgeLabel> labels_;
};

IncidenceGraph build_incidence_graph(const Program& p);

/// ww(Π): the largest finite lower or upper bound, 0 when there is none.
std::uint64_t constraint_width(const Program& p);

}  // namespace wcdp::decomp
