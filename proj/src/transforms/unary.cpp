#include "wcdp/transforms/unary.hpp"

#include <algorithm>
#include <stdexcept>

#include "wcdp/decomp/incidence_graph.hpp"

namespace wcdp::transforms {

UnaryTransform unary_pwc_to_pcc(const Program& p) {
    UnaryTransform out;
    ProgramBuilder b = builder_from(p);

    struct Pending {
        ConstraintId host;
        std::vector<WeightLiteral> clause;
    };
    std::vector<Pending> rewritten;

    for (std::uint32_t ci = 0; ci < p.constraint_count(); ++ci) {
        const ConstraintId host{ci};
        const Constraint& c = p.constraint(host);
        if (std::none_of(c.clause.begin(), c.clause.end(), [](const WeightLiteral& l) { return l.weight > 1; })) continue;
        std::vector<WeightLiteral> clause;
        for (const auto& lit : c.clause) {
            clause.push_back({lit.atom, lit.polarity, 1});
            if (lit.weight == 1) continue;
            const std::string& atom = p.atom_name(lit.atom);
            const std::string tag = atom + (lit.positive() ? "__w" : "__nw");
            const std::string anchor_name = "k__" + atom + (lit.positive() ? "" : "__n") + "@" + c.name;
            ConstraintId anchor = b.add_constraint(
                anchor_name, {{lit.atom, Polarity::kPositive, 1}, {lit.atom, Polarity::kNegative, 1}}, 1, 1);
            for (std::uint32_t alpha = 2; alpha <= lit.weight; ++alpha) {
                const std::string copy_name = tag + std::to_string(alpha) + "@" + c.name;
                AtomId copy = b.add_atom(copy_name);
                clause.push_back({copy, lit.polarity, 1});
                ConstraintId eq = b.add_constraint(
                    "eq__" + copy_name, {{copy, Polarity::kPositive, 1}, {lit.atom, Polarity::kNegative, 1}}, 1, 1);
                RuleId rule = b.add_rule("r__" + copy_name, eq, {anchor});
                out.copies.push_back({lit.atom, copy, host, eq, anchor, rule});
            }
        }
        rewritten.push_back({host, std::move(clause)});
    }

    Program q = std::move(b).build();
    if (rewritten.empty()) {
        out.program = std::move(q);
        return out;
    }
    // Rebuild with the rewritten host clauses; ids are unchanged because declaration order is kept.
    ProgramBuilder final_builder;
    for (const auto& name : q.atom_names()) final_builder.add_atom(name);
    std::size_t next = 0;
    for (std::uint32_t ci = 0; ci < q.constraint_count(); ++ci) {
        const Constraint& c = q.constraint(ConstraintId{ci});
        if (next < rewritten.size() && rewritten[next].host.value == ci) {
            final_builder.add_constraint(c.name, rewritten[next].clause, c.lower, c.upper);
            ++next;
        } else {
            final_builder.add_constraint(c.name, c.clause, c.lower, c.upper);
        }
    }
    for (const auto& r : q.rules()) final_builder.add_rule(r.name, r.head, r.body);
    out.program = std::move(final_builder).build();
    return out;
}

decomp::TreeDecomposition extend_td_for_unary(const decomp::TreeDecomposition& td, const Program& original,
                                              const UnaryTransform& t) {
    using decomp::Bag;
    using decomp::Vertex;
    const decomp::IncidenceGraph before(original);
    const decomp::IncidenceGraph after(t.program);

    decomp::TreeDecomposition out;
    out.root = td.root;
    out.labels = td.labels;
    out.edges = td.edges;
    for (const auto& bag : td.bags) {
        Bag mapped;
        for (auto v : bag) mapped.push_back(after.vertex(before.element(v)));
        std::sort(mapped.begin(), mapped.end());
        out.bags.push_back(std::move(mapped));
    }
    if (!out.labels.empty()) out.labels.resize(out.bags.size());

    auto add_bag = [&](std::initializer_list<Element> elements, std::uint32_t attach_to) {
        Bag bag;
        for (auto e : elements) bag.push_back(after.vertex(e));
        std::sort(bag.begin(), bag.end());
        out.bags.push_back(std::move(bag));
        if (!out.labels.empty()) out.labels.emplace_back();
        auto id = static_cast<std::uint32_t>(out.bags.size() - 1);
        out.edges.emplace_back(attach_to, id);
        return id;
    };
    auto holder = [&](Element a, Element c) -> std::uint32_t {
        Vertex va = after.vertex(a);
        Vertex vc = after.vertex(c);
        for (std::uint32_t i = 0; i < td.bags.size(); ++i) {
            const auto& bag = out.bags[i];
            if (std::binary_search(bag.begin(), bag.end(), va) && std::binary_search(bag.begin(), bag.end(), vc)) return i;
        }
        throw std::invalid_argument("decomposition does not cover an atom-constraint edge");
    };

    std::optional<std::uint32_t> anchor_bag;
    std::optional<ConstraintId> current_anchor;
    for (const auto& cp : t.copies) {
        const Element a(cp.original);
        const Element c(cp.host);
        const Element k(cp.anchor);
        if (current_anchor != cp.anchor) {
            anchor_bag = add_bag({a, c, k}, holder(a, c));
            current_anchor = cp.anchor;
        }
        auto y = add_bag({a, c, k, Element(cp.copy)}, *anchor_bag);
        auto z = add_bag({a, k, Element(cp.copy), Element(cp.equality)}, y);
        add_bag({k, Element(cp.equality), Element(cp.rule)}, z);
    }
    return out;
}

Program clamp_weights(const Program& p) {
    ProgramBuilder b;
    for (const auto& name : p.atom_names()) b.add_atom(name);
    for (const auto& c : p.constraints()) {
        auto clause = c.clause;
        if (c.upper) {
            for (auto& lit : clause) {
                if (lit.weight > *c.upper + 1) lit.weight = static_cast<std::uint32_t>(*c.upper + 1);
            }
        }
        b.add_constraint(c.name, std::move(clause), c.lower, c.upper);
    }
    for (const auto& r : p.rules()) b.add_rule(r.name, r.head, r.body);
    return std::move(b).build();
}

std::uint64_t unary_size(const Program& p) {
    std::uint64_t size = p.atom_count();
    for (const auto& c : p.constraints()) {
        size += 1 + c.lower + c.upper.value_or(0);
        for (const auto& lit : c.clause) size += 1 + lit.weight;
    }
    for (const auto& r : p.rules()) size += 1 + r.body.size();
    return size;
}

std::uint64_t max_weight(const Program& p) {
    std::uint64_t w = 0;
    for (const auto& c : p.constraints()) {
        for (const auto& lit : c.clause) w = std::max<std::uint64_t>(w, lit.weight);
    }
    return w;
}

}  // namespace wcdp::transforms
