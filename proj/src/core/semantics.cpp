#include "wcdp/core/semantics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "wcdp/core/errors.hpp"

namespace wcdp {

namespace {

bool within_upper(std::uint64_t w, const UpperBound& upper) { return !upper || w <= *upper; }

// Constraints satisfied by I, indexed by constraint id.
std::vector<bool> satisfied_constraints(const Program& p, const Interpretation& i) {
    std::vector<bool> sat(p.constraint_count());
    for (std::uint32_t k = 0; k < p.constraint_count(); ++k) sat[k] = satisfies_constraint(i, p.constraint(ConstraintId{k}));
    return sat;
}

}  // namespace

std::uint64_t weight_of(const Constraint& c, const Interpretation& i) {
    std::uint64_t w = 0;
    for (const auto& lit : c.clause) {
        if (lit.positive() == i.contains(lit.atom)) w += lit.weight;
    }
    return w;
}

bool satisfies_constraint(const Interpretation& i, const Constraint& c) {
    auto w = weight_of(c, i);
    return c.lower <= w && within_upper(w, c.upper);
}

bool is_model(const Interpretation& i, const Program& p) {
    auto sat = satisfied_constraints(p, i);
    for (const auto& r : p.rules()) {
        if (sat[r.head.value]) continue;
        bool body_holds = std::all_of(r.body.begin(), r.body.end(), [&](ConstraintId b) { return sat[b.value]; });
        if (body_holds) return false;
    }
    return true;
}

ReductProgram reduct(const Program& p, const Interpretation& i) {
    ReductProgram out;
    for (const auto& r : p.rules()) {
        bool dropped = std::any_of(r.body.begin(), r.body.end(), [&](ConstraintId b) {
            const auto& c = p.constraint(b);
            return !within_upper(weight_of(c, i), c.upper);
        });
        if (dropped) continue;

        std::vector<ReductConstraint> body;
        body.reserve(r.body.size());
        for (auto b : r.body) {
            const auto& c = p.constraint(b);
            ReductConstraint rc;
            std::uint64_t false_negatives = 0;
            for (const auto& lit : c.clause) {
                if (lit.positive()) {
                    rc.clause.push_back(lit);
                } else if (!i.contains(lit.atom)) {
                    false_negatives += lit.weight;
                }
            }
            rc.lower = c.lower > false_negatives ? c.lower - false_negatives : 0;
            body.push_back(std::move(rc));
        }
        for (const auto& lit : p.constraint(r.head).clause) {
            if (lit.positive() && i.contains(lit.atom)) out.rules.push_back(ReductRule{lit.atom, body});
        }
    }
    return out;
}

bool satisfies_reduct_constraint(const Interpretation& j, const ReductConstraint& c) {
    std::uint64_t w = 0;
    for (const auto& lit : c.clause) {
        if (j.contains(lit.atom)) w += lit.weight;
    }
    return c.lower <= w;
}

bool models_reduct(const Interpretation& j, const ReductProgram& reduct) {
    for (const auto& r : reduct.rules) {
        bool body_holds = std::all_of(r.body.begin(), r.body.end(),
                                      [&](const ReductConstraint& c) { return satisfies_reduct_constraint(j, c); });
        if (body_holds && !j.contains(r.head)) return false;
    }
    return true;
}

Interpretation least_model(const ReductProgram& reduct, std::size_t universe) {
    Interpretation j(universe);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : reduct.rules) {
            if (j.contains(r.head)) continue;
            bool body_holds = std::all_of(r.body.begin(), r.body.end(),
                                          [&](const ReductConstraint& c) { return satisfies_reduct_constraint(j, c); });
            if (body_holds) {
                j.insert(r.head);
                changed = true;
            }
        }
    }
    return j;
}

bool is_stable(const Interpretation& i, const Program& p) {
    if (!is_model(i, p)) return false;
    // Models of the reduct are closed under intersection, so some J ⊂ I is a model iff the least one is.
    auto least = least_model(reduct(p, i), p.atom_count());
    return !least.proper_subset_of(i);
}

bool is_stable_by_subsets(const Interpretation& i, const Program& p) {
    if (!is_model(i, p)) return false;
    auto red = reduct(p, i);
    auto members = i.members();
    if (members.size() >= 63) throw CapacityError("subset enumeration over more than 62 true atoms");
    const std::uint64_t full = (std::uint64_t{1} << members.size()) - 1;
    for (std::uint64_t mask = 0; mask < full; ++mask) {
        Interpretation j(p.atom_count());
        for (std::size_t k = 0; k < members.size(); ++k) {
            if ((mask >> k) & 1u) j.insert(members[k]);
        }
        if (models_reduct(j, red)) return false;
    }
    return true;
}

bool is_stable_ordered(const Interpretation& i, const Program& p) {
    if (!p.is_pcc()) throw RejectionError("order characterization is defined for cardinality constraints only");
    if (!is_model(i, p)) return false;

    auto sat = satisfied_constraints(p, i);
    // (R3) only gets easier as more atoms precede a, so atoms can be derived greedily.
    Interpretation derived(p.atom_count());
    auto lower_met = [&](const Constraint& c) {
        std::uint64_t count = 0;
        for (const auto& lit : c.clause) {
            if (lit.positive() ? derived.contains(lit.atom) : !i.contains(lit.atom)) ++count;
        }
        return c.lower <= count;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto a : i.members()) {
            if (derived.contains(a)) continue;
            for (const auto& r : p.rules()) {
                const auto& head = p.constraint(r.head).clause;
                bool r1 = std::any_of(head.begin(), head.end(),
                                      [&](const WeightLiteral& l) { return l.positive() && l.atom == a; });
                if (!r1) continue;
                bool r2 = std::all_of(r.body.begin(), r.body.end(), [&](ConstraintId b) { return sat[b.value]; });
                if (!r2) continue;
                bool r3 = std::all_of(r.body.begin(), r.body.end(),
                                      [&](ConstraintId b) { return lower_met(p.constraint(b)); });
                if (r3) {
                    derived.insert(a);
                    changed = true;
                    break;
                }
            }
        }
    }
    return derived == i;
}

std::vector<Interpretation> enumerate_answer_sets(const Program& p, std::size_t limit) {
    const std::size_t n = p.atom_count();
    if (n > limit) {
        throw CapacityError("exhaustive enumeration refused: " + std::to_string(n) + " atoms exceed the limit of " +
                            std::to_string(limit));
    }
    if (n >= 63) throw CapacityError("exhaustive enumeration over more than 62 atoms");
    std::vector<Interpretation> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        auto i = Interpretation::from_mask(n, mask);
        if (is_stable(i, p)) out.push_back(std::move(i));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t car(const Constraint& c, const Interpretation& i, const Interpretation& universe) {
    std::uint64_t count = 0;
    for (const auto& lit : c.clause) {
        if (lit.positive()) {
            if (i.contains(lit.atom)) ++count;
        } else if (universe.contains(lit.atom) && !i.contains(lit.atom)) {
            ++count;
        }
    }
    return count;
}

std::uint64_t car_ord(const Constraint& c, ConstraintId self, const Interpretation& i, const Interpretation& universe,
                      const LinearOrder& order) {
    auto self_pos = order.position(Element(self));
    if (!self_pos) throw std::invalid_argument("order does not contain the constraint");
    for (auto a : i.members()) {
        if (!order.contains(Element(a))) throw std::invalid_argument("order does not contain every atom of I");
    }
    std::uint64_t count = 0;
    for (const auto& lit : c.clause) {
        if (lit.positive()) {
            if (i.contains(lit.atom) && *order.position(Element(lit.atom)) < *self_pos) ++count;
        } else if (universe.contains(lit.atom) && !i.contains(lit.atom)) {
            ++count;
        }
    }
    return count;
}

}  // namespace wcdp
