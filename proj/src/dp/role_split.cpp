#include "wcdp/dp/role_split.hpp"

#include <algorithm>

#include "wcdp/decomp/incidence_graph.hpp"

namespace wcdp::dp {

RoleSplit split_roles(const Program& p) {
    std::vector<bool> head(p.constraint_count(), false), body(p.constraint_count(), false);
    for (const auto& r : p.rules()) {
        head[r.head.value] = true;
        for (auto c : r.body) body[c.value] = true;
    }
    RoleSplit out;
    ProgramBuilder b;
    for (const auto& name : p.atom_names()) b.add_atom(name);
    for (const auto& c : p.constraints()) b.add_constraint(c.name, c.clause, c.lower, c.upper);
    std::vector<ConstraintId> body_ref(p.constraint_count());
    for (std::uint32_t i = 0; i < p.constraint_count(); ++i) {
        body_ref[i] = ConstraintId{i};
        if (!head[i] || !body[i]) continue;
        const Constraint& c = p.constraint(ConstraintId{i});
        body_ref[i] = b.add_constraint(c.name + "__body", c.clause, c.lower, c.upper);
        out.copies.emplace_back(ConstraintId{i}, body_ref[i]);
    }
    for (const auto& r : p.rules()) {
        std::vector<ConstraintId> rb;
        for (auto c : r.body) rb.push_back(body_ref[c.value]);
        b.add_rule(r.name, r.head, std::move(rb));
    }
    out.program = std::move(b).build();
    return out;
}

decomp::TreeDecomposition extend_td_for_split(const decomp::TreeDecomposition& td, const Program& original,
                                              const RoleSplit& split) {
    const decomp::IncidenceGraph before(original);
    const decomp::IncidenceGraph after(split.program);
    decomp::TreeDecomposition out = td;
    for (auto& bag : out.bags) {
        decomp::Bag mapped;
        for (auto v : bag) {
            Element e = before.element(v);
            mapped.push_back(after.vertex(e));
            if (!e.is_constraint()) continue;
            for (const auto& [orig, copy] : split.copies) {
                if (orig == e.constraint()) mapped.push_back(after.vertex(Element(copy)));
            }
        }
        std::sort(mapped.begin(), mapped.end());
        bag = std::move(mapped);
    }
    return out;
}

std::optional<std::pair<RoleSplit, decomp::NiceDecomposition>> split_for_solving(const Program& p,
                                                                                 const decomp::NiceDecomposition& nd) {
    RoleSplit split = split_roles(p);
    if (split.copies.empty()) return std::nullopt;
    auto nice = decomp::normalize(extend_td_for_split(nd.underlying(), p, split));
    // Copying into every bag can double the width; a fresh decomposition is often much narrower.
    const decomp::IncidenceGraph ig(split.program);
    auto fresh = decomp::normalize(decomp::heuristic_decompose(ig.graph(), decomp::Heuristic::kMinFill));
    if (fresh.width() < nice.width()) nice = std::move(fresh);
    return std::make_pair(std::move(split), std::move(nice));
}

}  // namespace wcdp::dp
