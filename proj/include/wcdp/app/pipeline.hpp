#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wcdp/core/program.hpp"
#include "wcdp/decomp/nice_decomposition.hpp"
#include "wcdp/decomp/tree_decomposition.hpp"
#include "wcdp/dp/role_split.hpp"
#include "wcdp/transforms/unary.hpp"

namespace wcdp::app {

enum class Mode { kConsistency, kCredulous, kSkeptical, kEnumerate, kWitness };

std::optional<Mode> parse_mode(const std::string& name);

struct SolveRequest {
    Mode mode = Mode::kConsistency;
    std::optional<std::string> query;
    /// "min-fill", "min-degree" or "import:<path>".
    std::string td = "min-fill";
    bool oracle = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> trace_out;
    bool allow_large_weights = false;
};

/// The program the DP actually runs on.
struct Prepared {
    Program original;
    Program pcc;
    std::optional<transforms::UnaryTransform> unary;
    /// The cardinality program before split_roles, and the split when one was needed.
    Program unsplit;
    std::optional<dp::RoleSplit> split;
    /// Weights too large for the unary transform; only the exhaustive oracle may answer.
    bool oracle_only = false;
};

/// Clamps and transforms weighted programs, then separates head and body roles. Throws RejectionError for weights above the program's
/// structural size unless `allow_large_weights`, in which case the result is marked oracle-only.
Prepared prepare(const Program& input, bool allow_large_weights);

/// Heuristic decomposition of the prepared program, or an imported one (of the original program,
/// extended over the unary gadgets and the body copies when needed). Throws on invalid imports.
decomp::TreeDecomposition decompose(const Prepared& prepared, const std::string& td_choice,
                                    std::optional<std::uint64_t> seed);

struct Report {
    std::string verdict;  // CONSISTENT, INCONSISTENT, YES or NO
    std::optional<std::string> witness;
    std::vector<std::string> extra;  // answer sets, notes, oracle comparison
    int width = -1;
    std::size_t nodes = 0;
    std::size_t table_max = 0;
    double time_ms = 0;
    int exit_code = 0;

    std::string text() const;
};

/// parse → (clamp, unary) → decompose → normalize → solve → optional oracle cross-check.
/// Exit code 0 for yes, 1 for no; errors are thrown and map to 2 in the CLI.
Report run(const Program& input, const SolveRequest& request);

/// Number of atoms, constraints, rules, literals and body entries, with every weight counted once.
std::uint64_t structural_size(const Program& p);

}  // namespace wcdp::app
