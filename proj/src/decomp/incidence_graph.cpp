#include "wcdp/decomp/incidence_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace wcdp::decomp {

IncidenceGraph::IncidenceGraph(const Program& p)
    : graph_(p.atom_count() + p.constraint_count() + p.rule_count()),
      atoms_(p.atom_count()),
      constraints_(p.constraint_count()),
      rules_(p.rule_count()) {
    auto key = [](Vertex u, Vertex v) { return std::make_pair(std::min(u, v), std::max(u, v)); };
    for (std::uint32_t c = 0; c < constraints_; ++c) {
        Vertex cv = vertex(Element(ConstraintId{c}));
        for (const auto& lit : p.constraint(ConstraintId{c}).clause) {
            Vertex av = vertex(Element(lit.atom));
            graph_.add_edge(av, cv);
            auto& l = labels_[key(av, cv)];
            if (lit.positive()) {
                l.positive = true;
                l.positive_weight = lit.weight;
            } else {
                l.negative = true;
                l.negative_weight = lit.weight;
            }
        }
    }
    for (std::uint32_t r = 0; r < rules_; ++r) {
        Vertex rv = vertex(Element(RuleId{r}));
        const auto& rule = p.rule(RuleId{r});
        Vertex hv = vertex(Element(rule.head));
        graph_.add_edge(hv, rv);
        labels_[key(hv, rv)].head = true;
        for (auto b : rule.body) {
            Vertex bv = vertex(Element(b));
            graph_.add_edge(bv, rv);
            labels_[key(bv, rv)].body = true;
        }
    }
}

Element IncidenceGraph::element(Vertex v) const {
    if (v < atoms_) return Element(AtomId{v});
    if (v < atoms_ + constraints_) return Element(ConstraintId{static_cast<std::uint32_t>(v - atoms_)});
    if (v < atoms_ + constraints_ + rules_) {
        return Element(RuleId{static_cast<std::uint32_t>(v - atoms_ - constraints_)});
    }
    throw std::out_of_range("vertex out of range");
}

Vertex IncidenceGraph::vertex(Element e) const {
    switch (e.kind()) {
        case ElementKind::kAtom: return e.index();
        case ElementKind::kConstraint: return static_cast<Vertex>(atoms_ + e.index());
        case ElementKind::kRule: return static_cast<Vertex>(atoms_ + constraints_ + e.index());
    }
    throw std::out_of_range("bad element kind");
}

const EdgeLabel& IncidenceGraph::label(Vertex u, Vertex v) const {
    return labels_.at(std::make_pair(std::min(u, v), std::max(u, v)));
}

IncidenceGraph build_incidence_graph(const Program& p) { return IncidenceGraph(p); }

std::uint64_t constraint_width(const Program& p) {
    std::uint64_t width = 0;
    for (const auto& c : p.constraints()) {
        width = std::max(width, c.lower);
        if (c.upper) width = std::max(width, *c.upper);
    }
    return width;
}

}  // namespace wcdp::decomp
