#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "wcdp/core/program.hpp"
#include "wcdp/decomp/nice_decomposition.hpp"
#include "wcdp/dp/bag_assignment.hpp"
#include "wcdp/dp/transitions.hpp"

// Test oracles for the DP: partial solutions over whole subtrees and their projections to a bag.

namespace wcdp::dp {

/// A subtree-wide candidate ε = (n, M̂, Ĉ, R̂, σ̂, ρ̂, λ̂, D̂). Sets are sorted.
struct PartialSolution {
    std::vector<AtomId> model;
    std::vector<ConstraintId> constraints;
    std::vector<RuleId> rules;
    std::vector<Element> order;
    std::map<ConstraintId, std::uint64_t> rho;     // every constraint in the subtree
    std::map<ConstraintId, std::uint64_t> lambda;  // constraints in Ĉ
    std::vector<RuleId> derivation_rules;
    std::vector<AtomId> derived_atoms;
    std::vector<ConstraintId> head_constraints;
    std::vector<ConstraintId> body_constraints;
    std::map<ConstraintId, bool> check;  // φ̂ on the head constraints
};

/// Every partial solution for `node`, by trying all model/constraint/witness guesses and all orders.
/// Body constraints are read as the rule bodies met so far, and a derivation rule whose head was met
/// must precede it and have it among the head constraints.
/// Throws CapacityError when an order would range over more than `max_order` elements.
std::vector<PartialSolution> enumerate_partial_solutions(const Program& p, const decomp::NiceDecomposition& nd,
                                                         std::uint32_t node, std::size_t max_order = 7);

/// ε restricted to the bag of `ctx`'s node, in the DP's exact (unsaturated, unpruned) layout.
BagAssignment project(const NodeContext& ctx, const PartialSolution& ps);

/// The same projections as enumerate_partial_solutions followed by project, but computed without
/// listing orders: orders are built one element at a time, keyed by the set already placed.
/// Throws CapacityError when the subtree holds more than `max_elements` atoms, constraints and rules.
std::vector<BagAssignment> bag_models(const Program& p, const decomp::NiceDecomposition& nd, std::uint32_t node,
                                      std::optional<AtomId> query = std::nullopt, std::size_t max_elements = 24);

}  // namespace wcdp::dp
