#include "wcdp/dp/partial_solution.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "wcdp/core/errors.hpp"
#include "wcdp/decomp/incidence_graph.hpp"

namespace wcdp::dp {

namespace {

using Mask = std::uint64_t;

bool in(Mask m, std::size_t i) { return ((m >> i) & 1) != 0; }
Mask bit(std::size_t i) { return Mask{1} << i; }
Mask all(std::size_t n) { return n == 64 ? ~Mask{0} : bit(n) - 1; }

// The elements met in a subtree, indexed locally per kind.
struct Scope {
    std::vector<AtomId> atoms;
    std::vector<ConstraintId> cons;
    std::vector<RuleId> rules;
    Mask atom_bag = 0, con_bag = 0, rule_bag = 0;
    std::vector<Mask> pos, neg;       // per constraint, over local atoms
    std::vector<int> head;            // local constraint or -1 outside the subtree
    std::vector<Mask> body;           // per rule, over local constraints in the subtree
    const Program* program = nullptr;

    std::size_t size() const { return atoms.size() + cons.size() + rules.size(); }
    const Constraint& con(std::size_t j) const { return program->constraint(cons[j]); }
};

Scope make_scope(const Program& p, const decomp::NiceDecomposition& nd, std::uint32_t node) {
    const decomp::IncidenceGraph ig(p);
    std::vector<bool> seen(ig.vertex_count(), false);
    std::vector<std::uint32_t> stack{node};
    while (!stack.empty()) {
        auto n = stack.back();
        stack.pop_back();
        for (auto v : nd.nodes.at(n).bag) seen[v] = true;
        for (auto c : nd.nodes[n].children) stack.push_back(c);
    }
    Scope s;
    s.program = &p;
    std::vector<int> atom_local(p.atom_count(), -1), con_local(p.constraint_count(), -1);
    for (decomp::Vertex v = 0; v < seen.size(); ++v) {
        if (!seen[v]) continue;
        Element e = ig.element(v);
        if (e.is_atom()) {
            atom_local[e.index()] = static_cast<int>(s.atoms.size());
            s.atoms.push_back(e.atom());
        } else if (e.is_constraint()) {
            con_local[e.index()] = static_cast<int>(s.cons.size());
            s.cons.push_back(e.constraint());
        } else {
            s.rules.push_back(e.rule());
        }
    }
    if (s.atoms.size() > 64 || s.cons.size() > 64 || s.rules.size() > 64) {
        throw CapacityError("partial-solution oracle limited to 64 elements per kind");
    }
    const auto& bag = nd.nodes[node].bag;
    auto in_bag = [&](Element e) { return std::binary_search(bag.begin(), bag.end(), ig.vertex(e)); };
    for (std::size_t i = 0; i < s.atoms.size(); ++i) {
        if (in_bag(Element(s.atoms[i]))) s.atom_bag |= bit(i);
    }
    for (std::size_t j = 0; j < s.cons.size(); ++j) {
        if (in_bag(Element(s.cons[j]))) s.con_bag |= bit(j);
        Mask pm = 0, nm = 0;
        for (const auto& lit : p.constraint(s.cons[j]).clause) {
            int a = atom_local[lit.atom.value];
            if (a < 0) continue;
            (lit.positive() ? pm : nm) |= bit(static_cast<std::size_t>(a));
        }
        s.pos.push_back(pm);
        s.neg.push_back(nm);
    }
    for (std::size_t k = 0; k < s.rules.size(); ++k) {
        if (in_bag(Element(s.rules[k]))) s.rule_bag |= bit(k);
        const Rule& r = p.rule(s.rules[k]);
        s.head.push_back(con_local[r.head.value]);
        Mask b = 0;
        for (auto c : r.body) {
            if (con_local[c.value] >= 0) b |= bit(static_cast<std::size_t>(con_local[c.value]));
        }
        s.body.push_back(b);
    }
    return s;
}

// M̂, Ĉ and R̂ with the counts fixed by conditions 1 to 3.
struct Base {
    Mask model = 0;
    Mask cons = 0;
    Mask rules = 0;
    std::vector<std::uint64_t> rho;
};

void for_each_base(const Scope& s, const std::function<void(const Base&)>& fn) {
    const Mask atoms_all = all(s.atoms.size());
    const Mask forgotten_rules = all(s.rules.size()) & ~s.rule_bag;
    std::vector<std::size_t> bag_cons;
    for (std::size_t j = 0; j < s.cons.size(); ++j) {
        if (in(s.con_bag, j)) bag_cons.push_back(j);
    }
    Base b;
    b.rho.resize(s.cons.size());
    for (Mask m = 0; m <= atoms_all; ++m) {
        b.model = m;
        Mask forced = 0;
        for (std::size_t j = 0; j < s.cons.size(); ++j) {
            b.rho[j] = std::popcount(s.pos[j] & m) + std::popcount(s.neg[j] & atoms_all & ~m);
            const auto& c = s.con(j);
            if (!in(s.con_bag, j) && c.lower <= b.rho[j] && (!c.upper || b.rho[j] <= *c.upper)) forced |= bit(j);
        }
        for (Mask g = 0; g < bit(bag_cons.size()); ++g) {
            b.cons = forced;
            for (std::size_t i = 0; i < bag_cons.size(); ++i) {
                if (in(g, i)) b.cons |= bit(bag_cons[i]);
            }
            b.rules = 0;
            for (std::size_t k = 0; k < s.rules.size(); ++k) {
                bool head_in = s.head[k] >= 0 && in(b.cons, static_cast<std::size_t>(s.head[k]));
                if (head_in || (s.body[k] & ~b.cons) != 0) b.rules |= bit(k);
            }
            if ((forgotten_rules & ~b.rules) == 0) fn(b);
        }
        if (m == atoms_all) break;
    }
}

template <class F>
void for_each_submask(Mask of, F&& fn) {
    for (Mask sub = of;; sub = (sub - 1) & of) {
        fn(sub);
        if (sub == 0) break;
    }
}

}  // namespace

std::vector<PartialSolution> enumerate_partial_solutions(const Program& p, const decomp::NiceDecomposition& nd,
                                                         std::uint32_t node, std::size_t max_order) {
    const Scope s = make_scope(p, nd, node);
    if (s.size() > max_order) {
        throw CapacityError("partial-solution enumeration limited to " + std::to_string(max_order) + " elements");
    }
    const Mask atoms_all = all(s.atoms.size());
    std::vector<PartialSolution> out;

    for_each_base(s, [&](const Base& b) {
        // σ̂ ranges over M̂ ∪ Ĉ ∪ all rules of the subtree.
        std::vector<Element> domain;
        for (std::size_t i = 0; i < s.atoms.size(); ++i) {
            if (in(b.model, i)) domain.push_back(Element(ElementKind::kAtom, static_cast<std::uint32_t>(i)));
        }
        for (std::size_t j = 0; j < s.cons.size(); ++j) {
            if (in(b.cons, j)) domain.push_back(Element(ElementKind::kConstraint, static_cast<std::uint32_t>(j)));
        }
        for (std::size_t k = 0; k < s.rules.size(); ++k) domain.push_back(Element(ElementKind::kRule, static_cast<std::uint32_t>(k)));

        for (Mask rd = 0; rd < bit(s.rules.size()); ++rd) {
            Mask bd = 0;
            for (std::size_t k = 0; k < s.rules.size(); ++k) {
                if (in(rd, k)) bd |= s.body[k];
            }
            if ((bd & ~b.cons) != 0) continue;  // B_D ⊆ Ĉ
            for_each_submask(b.cons, [&](Mask hd) {
                std::vector<Element> order = domain;
                std::vector<std::size_t> pa(s.atoms.size()), pc(s.cons.size()), pr(s.rules.size());
                do {
                    for (std::size_t x = 0; x < order.size(); ++x) {
                        auto& slot = order[x].is_atom() ? pa : order[x].is_constraint() ? pc : pr;
                        slot[order[x].index()] = x;
                    }
                    // condition 5
                    Mask ad = 0;
                    for (std::size_t i = 0; i < s.atoms.size(); ++i) {
                        if (!in(b.model, i)) continue;
                        for (std::size_t j = 0; j < s.cons.size(); ++j) {
                            if (in(hd, j) && in(s.pos[j], i) && pc[j] < pa[i]) ad |= bit(i);
                        }
                    }
                    if ((b.model & ~s.atom_bag & ~ad) != 0) continue;
                    bool ok = true;
                    // conditions 7 and 11
                    for (std::size_t k = 0; ok && k < s.rules.size(); ++k) {
                        if (!in(rd, k)) continue;
                        for (std::size_t j = 0; j < s.cons.size(); ++j) {
                            if (in(s.body[k], j) && pc[j] > pr[k]) ok = false;
                        }
                        if (s.head[k] >= 0) {
                            auto h = static_cast<std::size_t>(s.head[k]);
                            if (!in(hd, h) || pc[h] < pr[k]) ok = false;
                        }
                    }
                    if (!ok) continue;
                    // conditions 4 and 8
                    std::vector<std::uint64_t> lambda(s.cons.size(), 0);
                    for (std::size_t j = 0; j < s.cons.size(); ++j) {
                        if (!in(b.cons, j)) continue;
                        std::uint64_t v = std::popcount(s.neg[j] & atoms_all & ~b.model);
                        for (std::size_t i = 0; i < s.atoms.size(); ++i) {
                            if (in(s.pos[j], i) && in(b.model, i) && pa[i] < pc[j]) ++v;
                        }
                        lambda[j] = v;
                        if (in(bd, j) && !in(s.con_bag, j) && v < s.con(j).lower) ok = false;
                    }
                    if (!ok) continue;
                    // conditions 9 and 10
                    std::vector<bool> phi(s.cons.size(), false);
                    for (std::size_t k = 0; k < s.rules.size(); ++k) {
                        if (in(rd, k) && s.head[k] >= 0 && in(hd, static_cast<std::size_t>(s.head[k])) &&
                            pr[k] < pc[static_cast<std::size_t>(s.head[k])]) {
                            phi[static_cast<std::size_t>(s.head[k])] = true;
                        }
                    }
                    for (std::size_t j = 0; j < s.cons.size(); ++j) {
                        if (in(hd, j) && !in(s.con_bag, j) && !phi[j]) ok = false;
                    }
                    if (!ok) continue;

                    PartialSolution ps;
                    for (std::size_t i = 0; i < s.atoms.size(); ++i) {
                        if (in(b.model, i)) ps.model.push_back(s.atoms[i]);
                        if (in(ad, i)) ps.derived_atoms.push_back(s.atoms[i]);
                    }
                    for (std::size_t j = 0; j < s.cons.size(); ++j) {
                        ps.rho[s.cons[j]] = b.rho[j];
                        if (in(b.cons, j)) {
                            ps.constraints.push_back(s.cons[j]);
                            ps.lambda[s.cons[j]] = lambda[j];
                        }
                        if (in(hd, j)) {
                            ps.head_constraints.push_back(s.cons[j]);
                            ps.check[s.cons[j]] = phi[j];
                        }
                        if (in(bd, j)) ps.body_constraints.push_back(s.cons[j]);
                    }
                    for (std::size_t k = 0; k < s.rules.size(); ++k) {
                        if (in(b.rules, k)) ps.rules.push_back(s.rules[k]);
                        if (in(rd, k)) ps.derivation_rules.push_back(s.rules[k]);
                    }
                    for (auto e : order) {
                        if (e.is_atom()) ps.order.push_back(Element(s.atoms[e.index()]));
                        else if (e.is_constraint()) ps.order.push_back(Element(s.cons[e.index()]));
                        else ps.order.push_back(Element(s.rules[e.index()]));
                    }
                    out.push_back(std::move(ps));
                } while (std::next_permutation(order.begin(), order.end()));
            });
        }
    });
    return out;
}

BagAssignment project(const NodeContext& ctx, const PartialSolution& ps) {
    BagAssignment a(ctx.size());
    auto has = [](const auto& sorted, auto x) { return std::binary_search(sorted.begin(), sorted.end(), x); };
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        Element e = ctx.bag()[i];
        if (e.is_atom()) {
            a.set(i, BagAssignment::kM, has(ps.model, e.atom()));
            a.set(i, BagAssignment::kAD, has(ps.derived_atoms, e.atom()));
        } else if (e.is_constraint()) {
            auto c = e.constraint();
            a.set_rho(i, static_cast<std::uint32_t>(ps.rho.at(c)));
            if (has(ps.constraints, c)) {
                a.set(i, BagAssignment::kC);
                a.set_lambda(i, static_cast<std::uint32_t>(ps.lambda.at(c)));
            }
            if (has(ps.head_constraints, c)) {
                a.set(i, BagAssignment::kHD);
                a.set(i, BagAssignment::kPhi, ps.check.at(c));
            }
            a.set(i, BagAssignment::kBD, has(ps.body_constraints, c));
        } else {
            a.set(i, BagAssignment::kR, has(ps.rules, e.rule()));
            a.set(i, BagAssignment::kRD, has(ps.derivation_rules, e.rule()));
        }
    }
    for (auto e : ps.order) {
        if (ctx.slot(e)) a.order_insert(e, a.order_size());
    }
    if (ctx.policy().query && has(ps.model, *ctx.policy().query)) a.set_query(true);
    return a;
}

std::vector<BagAssignment> bag_models(const Program& p, const decomp::NiceDecomposition& nd, std::uint32_t node,
                                      std::optional<AtomId> query, std::size_t max_elements) {
    const Scope s = make_scope(p, nd, node);
    if (s.size() > max_elements) {
        throw CapacityError("bag-model oracle limited to " + std::to_string(max_elements) + " elements");
    }
    const decomp::IncidenceGraph ig(p);
    const NodeContext ctx(p, ig, nd, node, CountPolicy{std::nullopt, false, query});
    const Mask atoms_all = all(s.atoms.size());
    const Mask forgotten_cons = all(s.cons.size()) & ~s.con_bag;
    std::optional<std::size_t> query_local;
    if (query) {
        auto it = std::find(s.atoms.begin(), s.atoms.end(), *query);
        if (it != s.atoms.end()) query_local = static_cast<std::size_t>(it - s.atoms.begin());
    }
    auto slot_of = [&](Element global) { return *ctx.slot(global); };

    std::unordered_set<BagAssignment, BagAssignmentHash> result;

    for_each_base(s, [&](const Base& b) {
        // Every atom that leaves the subtree true needs a head constraint that can derive it.
        for (Mask rd = 0; rd < bit(s.rules.size()); ++rd) {
            Mask bd = 0, heads = 0;
            bool ok = true;
            for (std::size_t k = 0; k < s.rules.size(); ++k) {
                if (!in(rd, k)) continue;
                bd |= s.body[k];
                if (s.head[k] >= 0) heads |= bit(static_cast<std::size_t>(s.head[k]));
            }
            if ((bd & ~b.cons) != 0 || (heads & ~b.cons) != 0) ok = false;
            if (!ok) continue;
            // Forgotten head constraints need φ = 1, so they are exactly the forgotten heads of R_D;
            // bag head constraints are any superset of the bag heads of R_D.
            const Mask hd_forced = heads;
            const Mask hd_free = b.cons & s.con_bag & ~heads;
            for_each_submask(hd_free, [&](Mask extra) {
                const Mask hd = hd_forced | extra;
                for (std::size_t i = 0; i < s.atoms.size(); ++i) {
                    if (!in(b.model, i) || in(s.atom_bag, i)) continue;
                    bool derivable = false;
                    for (std::size_t j = 0; j < s.cons.size(); ++j) derivable |= in(hd, j) && in(s.pos[j], i);
                    if (!derivable) return;
                }

                BagAssignment base(ctx.size());
                for (std::size_t i = 0; i < s.atoms.size(); ++i) {
                    if (in(s.atom_bag, i) && in(b.model, i)) base.set(slot_of(Element(s.atoms[i])), BagAssignment::kM);
                }
                for (std::size_t j = 0; j < s.cons.size(); ++j) {
                    if (!in(s.con_bag, j)) continue;
                    auto slot = slot_of(Element(s.cons[j]));
                    base.set_rho(slot, static_cast<std::uint32_t>(b.rho[j]));
                    base.set(slot, BagAssignment::kC, in(b.cons, j));
                    base.set(slot, BagAssignment::kHD, in(hd, j));
                    base.set(slot, BagAssignment::kPhi, in(hd, j) && in(heads, j));
                    base.set(slot, BagAssignment::kBD, in(bd, j));
                }
                for (std::size_t k = 0; k < s.rules.size(); ++k) {
                    if (!in(s.rule_bag, k)) continue;
                    auto slot = slot_of(Element(s.rules[k]));
                    base.set(slot, BagAssignment::kR, in(b.rules, k));
                    base.set(slot, BagAssignment::kRD, in(rd, k));
                }
                if (query_local && in(b.model, *query_local)) base.set_query(true);

                // Elements whose position matters: M̂, the bag part of Ĉ, forgotten B_D and H_D
                // constraints, R_D and the bag rules.
                std::vector<Element> place;  // local indices
                for (std::size_t i = 0; i < s.atoms.size(); ++i) {
                    if (in(b.model, i)) place.push_back(Element(ElementKind::kAtom, static_cast<std::uint32_t>(i)));
                }
                for (std::size_t j = 0; j < s.cons.size(); ++j) {
                    if (in(b.cons, j) && (in(s.con_bag, j) || in(bd | hd, j))) {
                        place.push_back(Element(ElementKind::kConstraint, static_cast<std::uint32_t>(j)));
                    }
                }
                for (std::size_t k = 0; k < s.rules.size(); ++k) {
                    if (in(rd, k) || in(s.rule_bag, k)) {
                        place.push_back(Element(ElementKind::kRule, static_cast<std::uint32_t>(k)));
                    }
                }
                if (place.size() > 31) throw CapacityError("bag-model oracle: too many ordered elements");

                // Placed-set bookkeeping over atoms and constraints for the order conditions.
                struct Placed {
                    Mask atoms = 0;
                    Mask cons = 0;
                };
                auto placed_of = [&](std::uint32_t set) {
                    Placed out;
                    for (std::size_t x = 0; x < place.size(); ++x) {
                        if (!((set >> x) & 1)) continue;
                        if (place[x].is_atom()) out.atoms |= bit(place[x].index());
                        else if (place[x].is_constraint()) out.cons |= bit(place[x].index());
                    }
                    return out;
                };

                std::unordered_map<std::uint32_t, std::unordered_set<BagAssignment, BagAssignmentHash>> layer;
                layer[0].insert(base);
                for (std::size_t step = 0; step < place.size(); ++step) {
                    std::unordered_map<std::uint32_t, std::unordered_set<BagAssignment, BagAssignmentHash>> next;
                    for (const auto& [set, partials] : layer) {
                        const Placed before = placed_of(set);
                        for (std::size_t x = 0; x < place.size(); ++x) {
                            if ((set >> x) & 1) continue;
                            const Element e = place[x];
                            const std::size_t idx = e.index();
                            std::optional<std::size_t> slot;
                            bool derived = false;
                            std::uint64_t lambda = 0;
                            if (e.is_atom()) {
                                for (std::size_t j = 0; j < s.cons.size(); ++j) {
                                    derived |= in(hd & before.cons, j) && in(s.pos[j], idx);
                                }
                                if (!in(s.atom_bag, idx) && !derived) continue;
                                if (in(s.atom_bag, idx)) slot = slot_of(Element(s.atoms[idx]));
                            } else if (e.is_constraint()) {
                                lambda = std::popcount(s.pos[idx] & b.model & before.atoms) +
                                         std::popcount(s.neg[idx] & atoms_all & ~b.model);
                                if (in(bd & forgotten_cons, idx) && lambda < s.con(idx).lower) continue;
                                if (in(s.con_bag, idx)) slot = slot_of(Element(s.cons[idx]));
                            } else {
                                if (in(rd, idx)) {
                                    if ((s.body[idx] & ~before.cons) != 0) continue;
                                    if (s.head[idx] >= 0 && in(before.cons, static_cast<std::size_t>(s.head[idx]))) continue;
                                }
                                if (in(s.rule_bag, idx)) slot = slot_of(Element(s.rules[idx]));
                            }
                            auto& target = next[set | (1u << x)];
                            for (const auto& partial : partials) {
                                BagAssignment a = partial;
                                if (slot) {
                                    if (e.is_atom()) {
                                        a.set(*slot, BagAssignment::kAD, derived);
                                        a.order_insert(Element(s.atoms[idx]), a.order_size());
                                    } else if (e.is_constraint()) {
                                        a.set_lambda(*slot, static_cast<std::uint32_t>(lambda));
                                        a.order_insert(Element(s.cons[idx]), a.order_size());
                                    } else {
                                        a.order_insert(Element(s.rules[idx]), a.order_size());
                                    }
                                }
                                target.insert(std::move(a));
                            }
                        }
                    }
                    layer = std::move(next);
                }
                for (auto& [set, partials] : layer) result.insert(partials.begin(), partials.end());
            });
        }
    });
    return {result.begin(), result.end()};
}

}  // namespace wcdp::dp
