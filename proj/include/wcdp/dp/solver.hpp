#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "wcdp/core/program.hpp"
#include "wcdp/decomp/incidence_graph.hpp"
#include "wcdp/decomp/nice_decomposition.hpp"
#include "wcdp/dp/bag_assignment.hpp"
#include "wcdp/dp/transitions.hpp"

namespace wcdp::dp {

struct SolverOptions {
    /// Cap ρ and λ at constraint-width + 1.
    bool saturate = true;
    /// Drop table parts no guard ever reads (see CountPolicy::prune).
    bool prune = true;
    /// Keep every node's full table (needed for traces and table comparisons).
    bool keep_tables = false;
    /// Atom whose truth is tracked for credulous/skeptical reasoning.
    std::optional<AtomId> query;
};

struct DpStats {
    int width = -1;
    std::size_t nodes = 0;
    std::size_t table_max = 0;
    std::size_t entries_total = 0;
    /// Nodes whose table exceeded 2^{4w'} w'! k^{2w'} (w' bag size, k = ww + 1); only checked when saturating.
    std::size_t ceiling_violations = 0;
};

/// Bottom-up DP over a nice decomposition of a PCC's incidence graph. Tables follow the partial-solution
/// definition exactly; answers are complete only when no constraint is both a head and a body member
/// (see split_roles). The solve_* functions below take care of that.
class DpSolver {
public:
    /// Throws RejectionError for PWCs and std::invalid_argument for a decomposition that does not fit.
    DpSolver(const Program& p, const decomp::NiceDecomposition& nd, SolverOptions options = {});

    void run();

    bool consistent() const;
    /// Some answer set contains the query atom.
    bool credulous() const;
    /// Every answer set contains the query atom (vacuously true without answer sets).
    bool skeptical() const;
    /// The atoms set true along one derivation of a root entry; prefers entries carrying the query flag.
    std::optional<Interpretation> witness(bool prefer_query = false) const;

    const std::vector<BagAssignment>& table(std::uint32_t node) const;
    const NodeContext& context(std::uint32_t node) const { return contexts_.at(node); }
    const decomp::NiceDecomposition& decomposition() const { return *nd_; }
    const DpStats& stats() const { return stats_; }

private:
    struct Back {
        std::uint32_t left = 0;
        std::uint32_t right = kNone;
        bool atom_true = false;
    };
    static constexpr std::uint32_t kNone = 0xffffffffu;

    void compute(std::uint32_t node);
    bool ceiling_ok(std::uint32_t node, std::size_t entries) const;

    const Program* program_;
    const decomp::NiceDecomposition* nd_;
    decomp::IncidenceGraph ig_;
    SolverOptions options_;
    std::uint64_t constraint_width_ = 0;
    std::vector<NodeContext> contexts_;
    std::vector<std::vector<BagAssignment>> tables_;
    std::vector<std::vector<Back>> backs_;
    bool done_ = false;
    DpStats stats_;
};

/// These run on split_roles(p) with the decomposition extended to match when needed.
bool solve_consistency(const Program& p, const decomp::NiceDecomposition& nd, SolverOptions options = {});

enum class ReasoningMode { kCredulous, kSkeptical };
bool solve_reasoning(const Program& p, const decomp::NiceDecomposition& nd, AtomId a, ReasoningMode mode,
                     SolverOptions options = {});

std::optional<Interpretation> extract_witness(const Program& p, const decomp::NiceDecomposition& nd,
                                              SolverOptions options = {});

}  // namespace wcdp::dp
