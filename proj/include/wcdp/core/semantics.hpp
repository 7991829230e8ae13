#pragma once

#include <cstdint>
#include <vector>

#include "wcdp/core/linear_order.hpp"
#include "wcdp/core/program.hpp"

namespace wcdp {

/// Positive-only constraint of a reduct: (clause, lower), no upper bound.
struct ReductConstraint {
    std::vector<WeightLiteral> clause;
    std::uint64_t lower = 0;

    bool operator==(const ReductConstraint&) const = default;
};

struct ReductRule {
    AtomId head;
    std::vector<ReductConstraint> body;

    bool operator==(const ReductRule&) const = default;
};

struct ReductProgram {
    std::vector<ReductRule> rules;
};

inline constexpr std::size_t kDefaultExhaustiveLimit = 20;

/// W(c, I): weights of positive literals true in I plus negative literals false in I.
std::uint64_t weight_of(const Constraint& c, const Interpretation& i);
bool satisfies_constraint(const Interpretation& i, const Constraint& c);
bool is_model(const Interpretation& i, const Program& p);

ReductProgram reduct(const Program& p, const Interpretation& i);
bool satisfies_reduct_constraint(const Interpretation& j, const ReductConstraint& c);
bool models_reduct(const Interpretation& j, const ReductProgram& reduct);
/// Least model of a negation-free, upper-bound-free program over `universe` atoms.
Interpretation least_model(const ReductProgram& reduct, std::size_t universe);

/// Stable-model check via the least model of the reduct.
bool is_stable(const Interpretation& i, const Program& p);
/// Stable-model check straight from the definition: every J ⊂ I is tried against the reduct.
bool is_stable_by_subsets(const Interpretation& i, const Program& p);
/// Order-based characterization for PCCs; throws RejectionError on PWCs.
bool is_stable_ordered(const Interpretation& i, const Program& p);

/// All answer sets, sorted. Throws CapacityError when the program has more than `limit` atoms.
std::vector<Interpretation> enumerate_answer_sets(const Program& p, std::size_t limit = kDefaultExhaustiveLimit);

/// Universe-relative cardinality: positive literals with atom in I, negative literals with atom in U \ I.
/// `universe` must contain `i`.
std::uint64_t car(const Constraint& c, const Interpretation& i, const Interpretation& universe);
/// car restricted to positive atoms placed before constraint `self` in `order`.
/// Throws std::invalid_argument if `order` lacks `self` or an atom of I.
std::uint64_t car_ord(const Constraint& c, ConstraintId self, const Interpretation& i, const Interpretation& universe,
                      const LinearOrder& order);

}  // namespace wcdp
