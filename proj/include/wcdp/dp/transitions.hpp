#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wcdp/core/program.hpp"
#include "wcdp/decomp/incidence_graph.hpp"
#include "wcdp/decomp/nice_decomposition.hpp"
#include "wcdp/dp/bag_assignment.hpp"

namespace wcdp::dp {

/// How counts and witness parts are represented.
struct CountPolicy {
    /// ρ and λ are capped at this value; std::nullopt keeps exact counts.
    std::optional<std::uint32_t> cap;
    /// Keeps λ at zero for constraints that are no rule's body and never guesses H_D for constraints that
    /// are no rule's head. Neither changes any answer, but both change the tables.
    bool prune = false;
    std::optional<AtomId> query;
};

/// Everything a transition at one node needs, precomputed from the program and the bag.
class NodeContext {
public:
    NodeContext(const Program& p, const decomp::IncidenceGraph& ig, const decomp::NiceDecomposition& nd,
                std::uint32_t node, CountPolicy policy);

    decomp::NodeKind kind() const { return kind_; }
    /// Introduced or removed element (absent for leaf and branch nodes).
    std::optional<Element> element() const { return element_; }
    const std::vector<Element>& bag() const { return bag_; }
    std::size_t size() const { return bag_.size(); }
    std::optional<std::size_t> slot(Element e) const;

    bool positive(std::size_t con, std::size_t atom) const { return (lit_[con * size() + atom] & 1) != 0; }
    bool negative(std::size_t con, std::size_t atom) const { return (lit_[con * size() + atom] & 2) != 0; }
    /// Slot of the rule's head, if the head is in the bag.
    std::optional<std::size_t> head_slot(std::size_t rule) const;
    const std::vector<std::size_t>& body_slots(std::size_t rule) const { return body_[rule]; }

    const Constraint& constraint(std::size_t slot) const;
    const Program& program() const { return *program_; }
    const CountPolicy& policy() const { return policy_; }

    /// car(c, M, bag atoms) and car_<(c, M, bag atoms, σ) of the constraint in `con` for entry `a`.
    std::uint32_t car(const BagAssignment& a, std::size_t con) const;
    std::uint32_t car_ord(const BagAssignment& a, std::size_t con) const;
    /// C ⊨_{bag constraints} r for the rule in `rule`.
    bool rule_satisfied(const BagAssignment& a, std::size_t rule) const;

    std::uint32_t saturate(std::uint64_t v) const;
    /// a' + a'' - shared under the cap (a saturated operand saturates the result).
    std::uint32_t merge(std::uint32_t a, std::uint32_t b, std::uint32_t shared) const;
    bool tracks_lambda(std::size_t con) const;
    bool may_guess_head(std::size_t con) const;

private:
    const Program* program_;
    CountPolicy policy_;
    decomp::NodeKind kind_;
    std::optional<Element> element_;
    std::vector<Element> bag_;
    std::vector<std::uint8_t> lit_;
    std::vector<std::int32_t> head_;
    std::vector<std::vector<std::size_t>> body_;
    std::vector<std::uint8_t> in_some_body_;
    std::vector<std::uint8_t> head_of_some_rule_;
};

/// The single all-empty assignment of an empty-bag leaf.
std::vector<BagAssignment> leaf_assignments(const NodeContext& ctx);

/// All θ with θ' ≺ θ for a single-child node; `child` is θ' in the child's bag layout.
/// When `introduced_true` is given, it receives one flag per produced entry telling whether an
/// introduced atom was set to true.
std::vector<BagAssignment> apply_transition(const NodeContext& ctx, const BagAssignment& child,
                                            std::vector<bool>* introduced_true = nullptr);

/// Merge for branch nodes; absent when the two children disagree on M, C, σ, R_D or H_D.
std::optional<BagAssignment> combine_branch(const NodeContext& ctx, const BagAssignment& left,
                                            const BagAssignment& right);

/// The part of an entry that must agree at a branch node (M, C, R_D, H_D flags and σ).
BagAssignment branch_key(const BagAssignment& a);

}  // namespace wcdp::dp
