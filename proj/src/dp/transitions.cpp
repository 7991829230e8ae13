#include "wcdp/dp/transitions.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace wcdp::dp {

using decomp::NodeKind;
using F = BagAssignment;

NodeContext::NodeContext(const Program& p, const decomp::IncidenceGraph& ig, const decomp::NiceDecomposition& nd,
                         std::uint32_t node, CountPolicy policy)
    : program_(&p), policy_(policy) {
    const auto& n = nd.nodes.at(node);
    kind_ = decomp::classify(n, ig);
    if (n.vertex) element_ = ig.element(*n.vertex);
    bag_.reserve(n.bag.size());
    for (auto v : n.bag) bag_.push_back(ig.element(v));

    const std::size_t k = bag_.size();
    lit_.assign(k * k, 0);
    head_.assign(k, -1);
    body_.assign(k, {});
    in_some_body_.assign(k, 0);
    head_of_some_rule_.assign(k, 0);

    std::vector<std::uint8_t> is_body(p.constraint_count(), 0);
    std::vector<std::uint8_t> is_head(p.constraint_count(), 0);
    for (const auto& r : p.rules()) {
        is_head[r.head.value] = 1;
        for (auto b : r.body) is_body[b.value] = 1;
    }

    for (std::size_t i = 0; i < k; ++i) {
        Element e = bag_[i];
        if (e.is_constraint()) {
            in_some_body_[i] = is_body[e.index()];
            head_of_some_rule_[i] = is_head[e.index()];
            for (const auto& lit : p.constraint(e.constraint()).clause) {
                if (auto j = slot(Element(lit.atom))) lit_[i * k + *j] |= lit.positive() ? 1 : 2;
            }
        } else if (e.is_rule()) {
            const auto& r = p.rule(e.rule());
            if (auto h = slot(Element(r.head))) head_[i] = static_cast<std::int32_t>(*h);
            for (auto b : r.body) {
                if (auto j = slot(Element(b))) body_[i].push_back(*j);
            }
        }
    }
}

std::optional<std::size_t> NodeContext::slot(Element e) const {
    auto it = std::lower_bound(bag_.begin(), bag_.end(), e);
    if (it == bag_.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - bag_.begin());
}

std::optional<std::size_t> NodeContext::head_slot(std::size_t rule) const {
    if (head_[rule] < 0) return std::nullopt;
    return static_cast<std::size_t>(head_[rule]);
}

const Constraint& NodeContext::constraint(std::size_t slot) const {
    return program_->constraint(bag_.at(slot).constraint());
}

std::uint32_t NodeContext::car(const BagAssignment& a, std::size_t con) const {
    std::uint64_t n = 0;
    for (std::size_t j = 0; j < size(); ++j) {
        if (!bag_[j].is_atom()) continue;
        bool in_m = a.has(j, F::kM);
        if (in_m && positive(con, j)) ++n;
        if (!in_m && negative(con, j)) ++n;
    }
    return saturate(n);
}

std::uint32_t NodeContext::car_ord(const BagAssignment& a, std::size_t con) const {
    if (!tracks_lambda(con)) return 0;
    auto cpos = a.order_position(bag_[con]);
    std::uint64_t n = 0;
    for (std::size_t j = 0; j < size(); ++j) {
        if (!bag_[j].is_atom()) continue;
        if (a.has(j, F::kM)) {
            if (positive(con, j) && cpos && a.order_position(bag_[j]) < cpos) ++n;
        } else if (negative(con, j)) {
            ++n;
        }
    }
    return saturate(n);
}

bool NodeContext::rule_satisfied(const BagAssignment& a, std::size_t rule) const {
    if (head_[rule] >= 0 && a.has(static_cast<std::size_t>(head_[rule]), F::kC)) return true;
    return std::any_of(body_[rule].begin(), body_[rule].end(), [&](std::size_t b) { return !a.has(b, F::kC); });
}

std::uint32_t NodeContext::saturate(std::uint64_t v) const {
    if (policy_.cap) return static_cast<std::uint32_t>(std::min<std::uint64_t>(v, *policy_.cap));
    if (v > std::numeric_limits<std::uint32_t>::max()) throw std::overflow_error("count overflow");
    return static_cast<std::uint32_t>(v);
}

std::uint32_t NodeContext::merge(std::uint32_t a, std::uint32_t b, std::uint32_t shared) const {
    if (policy_.cap && (a >= *policy_.cap || b >= *policy_.cap)) return *policy_.cap;
    std::uint64_t sum = static_cast<std::uint64_t>(a) + b;
    if (sum < shared) throw std::logic_error("branch counts below their shared part");
    return saturate(sum - shared);
}

bool NodeContext::tracks_lambda(std::size_t con) const { return !policy_.prune || in_some_body_[con]; }

bool NodeContext::may_guess_head(std::size_t con) const { return !policy_.prune || head_of_some_rule_[con]; }

std::vector<BagAssignment> leaf_assignments(const NodeContext& ctx) {
    if (ctx.size() != 0) throw std::invalid_argument("leaf bag must be empty");
    return {BagAssignment(0)};
}

namespace {

void bump(const NodeContext& ctx, BagAssignment& a, std::size_t slot, bool lambda, std::uint32_t by = 1) {
    if (lambda) {
        a.set_lambda(slot, ctx.saturate(static_cast<std::uint64_t>(a.lambda(slot)) + by));
    } else {
        a.set_rho(slot, ctx.saturate(static_cast<std::uint64_t>(a.rho(slot)) + by));
    }
}

void introduce_atom(const NodeContext& ctx, std::size_t p, const BagAssignment& child, std::vector<BagAssignment>& out,
                    std::vector<bool>* truth) {
    const Element a = ctx.bag()[p];
    BagAssignment base = child;
    base.insert_slot(p);

    // a is false: negative occurrences count, in ρ and (order-free) in λ.
    {
        BagAssignment t = base;
        for (std::size_t c = 0; c < ctx.size(); ++c) {
            if (!ctx.bag()[c].is_constraint() || !ctx.negative(c, p)) continue;
            bump(ctx, t, c, false);
            if (t.has(c, F::kC) && ctx.tracks_lambda(c)) bump(ctx, t, c, true);
        }
        out.push_back(std::move(t));
        if (truth) truth->push_back(false);
    }
    // a is true, at every position of σ.
    for (std::size_t q = 0; q <= base.order_size(); ++q) {
        BagAssignment t = base;
        t.set(p, F::kM);
        t.order_insert(a, q);
        bool derived = false;
        for (std::size_t c = 0; c < ctx.size(); ++c) {
            if (!ctx.bag()[c].is_constraint() || !ctx.positive(c, p)) continue;
            bump(ctx, t, c, false);
            if (!t.has(c, F::kC)) continue;
            std::size_t cpos = *t.order_position(ctx.bag()[c]);
            if (cpos > q && ctx.tracks_lambda(c)) bump(ctx, t, c, true);
            if (cpos < q && t.has(c, F::kHD)) derived = true;
        }
        if (derived) t.set(p, F::kAD);
        if (ctx.policy().query && Element(*ctx.policy().query) == a) t.set_query(true);
        out.push_back(std::move(t));
        if (truth) truth->push_back(true);
    }
}

void introduce_constraint(const NodeContext& ctx, std::size_t p, const BagAssignment& child,
                          std::vector<BagAssignment>& out) {
    const Element c = ctx.bag()[p];
    BagAssignment base = child;
    base.insert_slot(p);
    const std::uint32_t car = ctx.car(base, p);

    std::vector<std::size_t> used;  // slots of rules in R_D
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (ctx.bag()[i].is_rule() && base.has(i, F::kRD)) used.push_back(i);
    }
    auto in_body = [&](std::size_t r) {
        const auto& b = ctx.body_slots(r);
        return std::find(b.begin(), b.end(), p) != b.end();
    };
    auto is_head = [&](std::size_t r) { return ctx.head_slot(r) == p; };
    auto add_satisfied_rules = [&](BagAssignment& t) {
        for (std::size_t i = 0; i < ctx.size(); ++i) {
            if (ctx.bag()[i].is_rule() && ctx.rule_satisfied(t, i)) t.set(i, F::kR);
        }
    };

    // c is false.
    if (std::none_of(used.begin(), used.end(), [&](std::size_t r) { return in_body(r) || is_head(r); })) {
        BagAssignment t = base;
        t.set_rho(p, car);
        add_satisfied_rules(t);
        out.push_back(std::move(t));
    }

    // c is true, at every position of σ.
    const bool body_of_used = std::any_of(used.begin(), used.end(), in_body);
    const bool head_of_used = std::any_of(used.begin(), used.end(), is_head);
    for (std::size_t q = 0; q <= base.order_size(); ++q) {
        BagAssignment t = base;
        t.order_insert(c, q);
        bool ok = true;
        for (auto r : used) {
            std::size_t rpos = *t.order_position(ctx.bag()[r]);
            if (in_body(r) && rpos < q) ok = false;
            if (is_head(r) && rpos > q) ok = false;
        }
        if (!ok) continue;
        t.set(p, F::kC);
        add_satisfied_rules(t);
        t.set_rho(p, car);
        t.set_lambda(p, ctx.car_ord(t, p));
        if (body_of_used) t.set(p, F::kBD);

        for (int head_choice = 0; head_choice < 2; ++head_choice) {
            bool in_hd = head_choice == 1;
            if (head_of_used && !in_hd) continue;
            if (!head_of_used && in_hd && !ctx.may_guess_head(p)) continue;
            BagAssignment h = t;
            if (in_hd) {
                h.set(p, F::kHD);
                for (std::size_t j = 0; j < ctx.size(); ++j) {
                    if (ctx.bag()[j].is_atom() && h.has(j, F::kM) && ctx.positive(p, j) &&
                        *h.order_position(ctx.bag()[j]) > q) {
                        h.set(j, F::kAD);
                    }
                }
                if (head_of_used) h.set(p, F::kPhi);
            }
            out.push_back(std::move(h));
        }
    }
}

void introduce_rule(const NodeContext& ctx, std::size_t p, const BagAssignment& child, std::vector<BagAssignment>& out) {
    const Element r = ctx.bag()[p];
    BagAssignment base = child;
    base.insert_slot(p);
    const bool satisfied = ctx.rule_satisfied(base, p);
    const auto head = ctx.head_slot(p);
    for (std::size_t q = 0; q <= base.order_size(); ++q) {
        BagAssignment t = base;
        t.order_insert(r, q);
        if (satisfied) t.set(p, F::kR);

        bool can_use = true;
        if (head) {
            can_use = t.has(*head, F::kHD) && *t.order_position(ctx.bag()[*head]) > q;
        }
        for (auto b : ctx.body_slots(p)) {
            if (!can_use) break;
            can_use = t.has(b, F::kC) && *t.order_position(ctx.bag()[b]) < q;
        }
        if (can_use) {
            BagAssignment u = t;
            u.set(p, F::kRD);
            for (auto b : ctx.body_slots(p)) u.set(b, F::kBD);
            if (head) u.set(*head, F::kPhi);
            out.push_back(std::move(u));
        }
        out.push_back(std::move(t));
    }
}

}  // namespace

std::vector<BagAssignment> apply_transition(const NodeContext& ctx, const BagAssignment& child,
                                            std::vector<bool>* introduced_true) {
    std::vector<BagAssignment> out;
    if (!ctx.element()) throw std::invalid_argument("apply_transition needs a single-child node");
    const Element e = *ctx.element();

    switch (ctx.kind()) {
        case NodeKind::kAI: introduce_atom(ctx, *ctx.slot(e), child, out, introduced_true); return out;
        case NodeKind::kCI: introduce_constraint(ctx, *ctx.slot(e), child, out); break;
        case NodeKind::kRI: introduce_rule(ctx, *ctx.slot(e), child, out); break;
        case NodeKind::kAR:
        case NodeKind::kCR:
        case NodeKind::kRR: {
            // The removed element's slot in the child's bag.
            const auto& bag = ctx.bag();
            std::size_t p = static_cast<std::size_t>(std::lower_bound(bag.begin(), bag.end(), e) - bag.begin());
            if (child.bag_size() != bag.size() + 1) throw std::invalid_argument("child entry has the wrong bag size");
            const auto fl = child.flags(p);
            bool keep = true;
            if (ctx.kind() == NodeKind::kAR) {
                keep = !(fl & F::kM) || (fl & F::kAD);
            } else if (ctx.kind() == NodeKind::kRR) {
                keep = (fl & F::kR) != 0;
            } else {
                const auto& con = ctx.program().constraint(e.constraint());
                const std::uint32_t rho = child.rho(p);
                bool holds = rho >= con.lower && (!con.upper || rho <= *con.upper);
                keep = ((fl & F::kC) != 0) == holds;
                if ((fl & F::kHD) && !(fl & F::kPhi)) keep = false;
                if ((fl & F::kBD) && child.lambda(p) < con.lower) keep = false;
            }
            if (keep) {
                BagAssignment t = child;
                if (t.order_position(e)) t.order_erase(e);
                t.erase_slot(p);
                out.push_back(std::move(t));
            }
            break;
        }
        case NodeKind::kL:
        case NodeKind::kB: throw std::invalid_argument("apply_transition needs a single-child node");
    }
    if (introduced_true) introduced_true->assign(out.size(), false);
    return out;
}

BagAssignment branch_key(const BagAssignment& a) {
    BagAssignment key = a;
    key.set_query(false);
    constexpr std::uint32_t kShared = F::kM | F::kC | F::kRD | F::kHD;
    for (std::size_t i = 0; i < key.bag_size(); ++i) {
        std::uint32_t keep = key.flags(i) & kShared;
        key.set(i, ~0u, false);
        key.set(i, keep);
        key.set_rho(i, 0);
        key.set_lambda(i, 0);
    }
    return key;
}

std::optional<BagAssignment> combine_branch(const NodeContext& ctx, const BagAssignment& left,
                                            const BagAssignment& right) {
    if (left.bag_size() != ctx.size() || right.bag_size() != ctx.size()) {
        throw std::invalid_argument("branch entries have the wrong bag size");
    }
    if (!(branch_key(left) == branch_key(right))) return std::nullopt;
    BagAssignment t = left;
    t.set_query(left.query() || right.query());
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        t.set(i, right.flags(i) & (F::kR | F::kAD | F::kBD | F::kPhi));
        if (!ctx.bag()[i].is_constraint()) continue;
        t.set_rho(i, ctx.merge(left.rho(i), right.rho(i), ctx.car(t, i)));
        if (t.has(i, F::kC) && ctx.tracks_lambda(i)) {
            t.set_lambda(i, ctx.merge(left.lambda(i), right.lambda(i), ctx.car_ord(t, i)));
        }
    }
    return t;
}

}  // namespace wcdp::dp
