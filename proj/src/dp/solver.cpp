#include "wcdp/dp/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "wcdp/core/errors.hpp"
#include "wcdp/dp/role_split.hpp"

namespace wcdp::dp {

using decomp::NodeKind;

namespace {

/// Entries plus a hash index over them; insertion keeps the first occurrence.
class Table {
public:
    Table() : index_(16, Hash{&entries_}, Eq{&entries_}) {}

    /// Returns the index of the stored entry and whether it was new.
    std::pair<std::uint32_t, bool> insert(BagAssignment a) {
        entries_.push_back(std::move(a));
        auto candidate = static_cast<std::uint32_t>(entries_.size() - 1);
        auto [it, fresh] = index_.insert(candidate);
        if (!fresh) entries_.pop_back();
        return {*it, fresh};
    }

    std::vector<BagAssignment> release() {
        index_.clear();
        return std::move(entries_);
    }

private:
    struct Hash {
        const std::vector<BagAssignment>* v;
        std::size_t operator()(std::uint32_t i) const { return (*v)[i].hash(); }
    };
    struct Eq {
        const std::vector<BagAssignment>* v;
        bool operator()(std::uint32_t a, std::uint32_t b) const { return (*v)[a] == (*v)[b]; }
    };

    std::vector<BagAssignment> entries_;
    std::unordered_set<std::uint32_t, Hash, Eq> index_;
};

}  // namespace

DpSolver::DpSolver(const Program& p, const decomp::NiceDecomposition& nd, SolverOptions options)
    : program_(&p), nd_(&nd), ig_(p), options_(options) {
    if (!p.is_pcc()) throw RejectionError("the DP accepts PCCs only; transform weighted programs first");
    if (auto why = decomp::nice_violation(nd)) throw std::invalid_argument("not a nice decomposition: " + *why);
    if (auto why = decomp::td_violation(ig_.graph(), nd.underlying())) {
        throw std::invalid_argument("decomposition does not fit the program: " + *why);
    }
    if (options_.query && options_.query->value >= p.atom_count()) throw std::invalid_argument("unknown query atom");
    constraint_width_ = decomp::constraint_width(p);

    CountPolicy policy;
    if (options_.saturate) policy.cap = static_cast<std::uint32_t>(std::min<std::uint64_t>(constraint_width_ + 1, 0xfffffffeu));
    policy.prune = options_.prune;
    policy.query = options_.query;
    contexts_.reserve(nd.node_count());
    for (std::uint32_t i = 0; i < nd.node_count(); ++i) contexts_.emplace_back(p, ig_, nd, i, policy);
    tables_.resize(nd.node_count());
    backs_.resize(nd.node_count());
    stats_.width = nd.width();
    stats_.nodes = nd.node_count();
}

void DpSolver::run() {
    if (done_) return;
    // Children precede parents in node order.
    for (std::uint32_t i = 0; i < nd_->node_count(); ++i) {
        compute(i);
        if (!options_.keep_tables) {
            for (auto c : nd_->nodes[i].children) {
                tables_[c].clear();
                tables_[c].shrink_to_fit();
            }
        }
    }
    done_ = true;
}

void DpSolver::compute(std::uint32_t node) {
    const auto& n = nd_->nodes[node];
    const auto& ctx = contexts_[node];
    Table table;
    auto& back = backs_[node];

    if (ctx.kind() == NodeKind::kL) {
        for (auto& a : leaf_assignments(ctx)) {
            if (table.insert(std::move(a)).second) back.push_back({});
        }
    } else if (ctx.kind() == NodeKind::kB) {
        const auto& left = tables_[n.children[0]];
        const auto& right = tables_[n.children[1]];
        std::unordered_map<BagAssignment, std::vector<std::uint32_t>, BagAssignmentHash> by_key;
        for (std::uint32_t j = 0; j < right.size(); ++j) by_key[branch_key(right[j])].push_back(j);
        for (std::uint32_t i = 0; i < left.size(); ++i) {
            auto it = by_key.find(branch_key(left[i]));
            if (it == by_key.end()) continue;
            for (auto j : it->second) {
                auto merged = combine_branch(ctx, left[i], right[j]);
                if (merged && table.insert(std::move(*merged)).second) back.push_back({i, j, false});
            }
        }
    } else {
        const auto& child = tables_[n.children[0]];
        std::vector<bool> truth;
        for (std::uint32_t i = 0; i < child.size(); ++i) {
            truth.clear();
            auto produced = apply_transition(ctx, child[i], &truth);
            for (std::size_t k = 0; k < produced.size(); ++k) {
                if (table.insert(std::move(produced[k])).second) back.push_back({i, kNone, truth[k]});
            }
        }
    }
    tables_[node] = table.release();
    const auto size = tables_[node].size();
    stats_.table_max = std::max(stats_.table_max, size);
    stats_.entries_total += size;
    if (options_.saturate && !ceiling_ok(node, size)) ++stats_.ceiling_violations;
}

bool DpSolver::ceiling_ok(std::uint32_t node, std::size_t entries) const {
    const double w = static_cast<double>(nd_->nodes[node].bag.size());
    const double k = static_cast<double>(constraint_width_ + 1);
    double log_bound = 4 * w * std::log(2.0) + std::lgamma(w + 1) + 2 * w * std::log(k);
    if (options_.query) log_bound += std::log(2.0);
    return std::log(static_cast<double>(entries)) <= log_bound + 1e-9;
}

bool DpSolver::consistent() const {
    if (!done_) throw std::logic_error("run() first");
    return !tables_[nd_->root].empty();
}

bool DpSolver::credulous() const {
    if (!options_.query) throw std::logic_error("no query atom configured");
    if (!done_) throw std::logic_error("run() first");
    const auto& root = tables_[nd_->root];
    return std::any_of(root.begin(), root.end(), [](const BagAssignment& a) { return a.query(); });
}

bool DpSolver::skeptical() const {
    if (!options_.query) throw std::logic_error("no query atom configured");
    if (!done_) throw std::logic_error("run() first");
    const auto& root = tables_[nd_->root];
    return std::all_of(root.begin(), root.end(), [](const BagAssignment& a) { return a.query(); });
}

std::optional<Interpretation> DpSolver::witness(bool prefer_query) const {
    if (!consistent()) return std::nullopt;
    const auto& root = tables_[nd_->root];
    std::uint32_t start = 0;
    if (prefer_query) {
        for (std::uint32_t i = 0; i < root.size(); ++i) {
            if (root[i].query()) {
                start = i;
                break;
            }
        }
    }
    Interpretation result(program_->atom_count());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{nd_->root, start}};
    while (!stack.empty()) {
        auto [node, entry] = stack.back();
        stack.pop_back();
        const auto& n = nd_->nodes[node];
        const Back& b = backs_[node][entry];
        const auto& ctx = contexts_[node];
        if (ctx.kind() == NodeKind::kAI && b.atom_true) result.insert(ctx.element()->atom());
        if (n.children.size() == 1) stack.emplace_back(n.children[0], b.left);
        if (n.children.size() == 2) {
            stack.emplace_back(n.children[0], b.left);
            stack.emplace_back(n.children[1], b.right);
        }
    }
    return result;
}

const std::vector<BagAssignment>& DpSolver::table(std::uint32_t node) const {
    if (!done_) throw std::logic_error("run() first");
    if (!options_.keep_tables && node != nd_->root) throw std::logic_error("tables were not kept");
    return tables_.at(node);
}

namespace {

// Runs the DP on the role-split program when `p` needs it; atoms keep their ids.
DpSolver solve_split(const Program& p, const decomp::NiceDecomposition& nd, SolverOptions options,
                     std::optional<std::pair<RoleSplit, decomp::NiceDecomposition>>& keep) {
    keep = split_for_solving(p, nd);
    DpSolver s = keep ? DpSolver(keep->first.program, keep->second, options) : DpSolver(p, nd, options);
    s.run();
    return s;
}

}  // namespace

bool solve_consistency(const Program& p, const decomp::NiceDecomposition& nd, SolverOptions options) {
    std::optional<std::pair<RoleSplit, decomp::NiceDecomposition>> keep;
    return solve_split(p, nd, options, keep).consistent();
}

bool solve_reasoning(const Program& p, const decomp::NiceDecomposition& nd, AtomId a, ReasoningMode mode,
                     SolverOptions options) {
    options.query = a;
    std::optional<std::pair<RoleSplit, decomp::NiceDecomposition>> keep;
    auto s = solve_split(p, nd, options, keep);
    return mode == ReasoningMode::kCredulous ? s.credulous() : s.skeptical();
}

std::optional<Interpretation> extract_witness(const Program& p, const decomp::NiceDecomposition& nd,
                                              SolverOptions options) {
    std::optional<std::pair<RoleSplit, decomp::NiceDecomposition>> keep;
    return solve_split(p, nd, options, keep).witness();
}

}  // namespace wcdp::dp
