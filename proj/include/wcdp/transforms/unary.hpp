#pragma once

#include <cstdint>
#include <vector>

#include "wcdp/core/program.hpp"
#include "wcdp/decomp/tree_decomposition.hpp"

namespace wcdp::transforms {

/// One fresh copy a_α of atom a, created for a weighted literal of `host`.
struct UnaryCopy {
    AtomId original;
    AtomId copy;
    ConstraintId host;
    ConstraintId equality;  // f_α = ({(a_α,1),(¬a,1)},1,1)
    ConstraintId anchor;    // k = ({(a,1),(¬a,1)},1,1), shared by the copies of one literal
    RuleId rule;            // r_α = (f_α, {k})
};

struct UnaryTransform {
    Program program;
    std::vector<UnaryCopy> copies;
};

/// Replaces every literal of weight j > 1 by j weight-1 literals over a and fresh copies a_2..a_j that
/// are forced to agree with a. Original atoms, constraints and rules keep their ids; fresh ones are
/// appended. A program without heavy literals is returned unchanged.
UnaryTransform unary_pwc_to_pcc(const Program& p);

/// Extends a decomposition of `original`'s incidence graph to one of the transformed program by pendant
/// bags {a,c,k}, then per copy {a,c,k,a_α}, {a,k,a_α,f_α}, {k,f_α,r_α}. Width ≤ max(3, width(td)).
decomp::TreeDecomposition extend_td_for_unary(const decomp::TreeDecomposition& td, const Program& original,
                                              const UnaryTransform& t);

/// Caps every literal weight at u+1 in constraints with a finite upper bound u.
Program clamp_weights(const Program& p);

/// Program size with weights and bounds counted in unary:
/// |A| + Σ_c (1 + l + u + Σ_lits (1 + j)) + Σ_r (1 + |b|), an infinite upper bound counting 0.
std::uint64_t unary_size(const Program& p);

/// Largest literal weight, 0 for a program without literals.
std::uint64_t max_weight(const Program& p);

}  // namespace wcdp::transforms
