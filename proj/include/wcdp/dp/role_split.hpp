#pragma once

#include <utility>
#include <vector>

#include "wcdp/core/program.hpp"
#include "wcdp/decomp/nice_decomposition.hpp"
#include "wcdp/decomp/tree_decomposition.hpp"

namespace wcdp::dp {

/// A program in which no constraint is both a rule head and a rule body member.
///
/// The order σ gives each constraint one position. A constraint that derives an atom as a head must
/// precede that atom, while as a body member it must follow the atoms it counts, so a program like
///
///     c1 { 1 <= p1 + p4 + ~p2 <= 1 }   rule r1: c1.
///     c2 { 3 <= ~p4 + ~p5 + p2 <= 3 }  rule r2: c2 :- c1.
///
/// (answer set {p1, p2}) has no partial solution at the root. Bodies are therefore redirected to an
/// identical copy `<name>__body`, appended after the original constraints; answer sets are unchanged.
struct RoleSplit {
    Program program;
    std::vector<std::pair<ConstraintId, ConstraintId>> copies;  // (original, body copy)
};

/// Copies every constraint that occurs as a head and in some body. Programs without such constraints
/// come back unchanged.
RoleSplit split_roles(const Program& p);

/// Puts each body copy into every bag holding its original (bags refer to `original`'s incidence graph).
/// Width grows by at most the number of split constraints per bag.
decomp::TreeDecomposition extend_td_for_split(const decomp::TreeDecomposition& td, const Program& original,
                                              const RoleSplit& split);

/// split_roles plus a nice decomposition for it: `nd` extended by extend_td_for_split, or a min-fill
/// decomposition of the split program when that one is narrower. std::nullopt when nothing needs splitting.
std::optional<std::pair<RoleSplit, decomp::NiceDecomposition>> split_for_solving(const Program& p,
                                                                                 const decomp::NiceDecomposition& nd);

}  // namespace wcdp::dp
