#include "wcdp/core/linear_order.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace wcdp {

LinearOrder::LinearOrder(std::initializer_list<Element> items) : LinearOrder(std::vector<Element>(items)) {}

LinearOrder::LinearOrder(std::vector<Element> items) : items_(std::move(items)) {
    std::unordered_set<Element> seen;
    for (auto e : items_) {
        if (!seen.insert(e).second) throw std::invalid_argument("linear order contains a duplicate element");
    }
}

std::optional<std::size_t> LinearOrder::position(Element x) const {
    auto it = std::find(items_.begin(), items_.end(), x);
    if (it == items_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - items_.begin());
}

bool LinearOrder::before(Element x, Element y) const {
    auto px = position(x);
    auto py = position(y);
    return px && py && *px < *py;
}

LinearOrder LinearOrder::remove(Element x) const {
    auto pos = position(x);
    if (!pos) throw std::invalid_argument("element not in linear order");
    LinearOrder out;
    out.items_.reserve(items_.size() - 1);
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i != *pos) out.items_.push_back(items_[i]);
    }
    return out;
}

LinearOrder LinearOrder::insert_at(Element x, std::size_t pos) const {
    if (contains(x)) throw std::invalid_argument("element already in linear order");
    if (pos > items_.size()) throw std::out_of_range("insert position beyond end of order");
    LinearOrder out;
    out.items_.reserve(items_.size() + 1);
    out.items_.insert(out.items_.end(), items_.begin(), items_.begin() + static_cast<std::ptrdiff_t>(pos));
    out.items_.push_back(x);
    out.items_.insert(out.items_.end(), items_.begin() + static_cast<std::ptrdiff_t>(pos), items_.end());
    return out;
}

bool order_consistent(const LinearOrder& a, const LinearOrder& b) {
    // Restrict both to the shared elements; they are consistent iff the restrictions coincide.
    std::vector<Element> ra;
    std::vector<Element> rb;
    for (auto e : a.items()) {
        if (b.contains(e)) ra.push_back(e);
    }
    for (auto e : b.items()) {
        if (a.contains(e)) rb.push_back(e);
    }
    return ra == rb;
}

namespace {

void interleave(const LinearOrder& a, const LinearOrder& b, std::size_t i, std::size_t j, std::vector<Element>& prefix,
                std::set<std::vector<Element>>& out) {
    if (i == a.size() && j == b.size()) {
        out.insert(prefix);
        return;
    }
    if (i < a.size()) {
        Element x = a[i];
        if (!b.contains(x)) {
            prefix.push_back(x);
            interleave(a, b, i + 1, j, prefix, out);
            prefix.pop_back();
        } else if (j < b.size() && b[j] == x) {
            prefix.push_back(x);
            interleave(a, b, i + 1, j + 1, prefix, out);
            prefix.pop_back();
        }
    }
    if (j < b.size()) {
        Element y = b[j];
        if (!a.contains(y)) {
            prefix.push_back(y);
            interleave(a, b, i, j + 1, prefix, out);
            prefix.pop_back();
        }
    }
}

}  // namespace

std::vector<LinearOrder> order_combine(const LinearOrder& a, const LinearOrder& b) {
    if (!order_consistent(a, b)) throw std::invalid_argument("cannot combine inconsistent linear orders");
    std::set<std::vector<Element>> results;
    std::vector<Element> prefix;
    interleave(a, b, 0, 0, prefix, results);
    std::vector<LinearOrder> out;
    out.reserve(results.size());
    for (auto& seq : results) out.emplace_back(seq);
    return out;
}

}  // namespace wcdp
