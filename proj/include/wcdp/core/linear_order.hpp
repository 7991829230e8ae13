#pragma once

#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "wcdp/core/element.hpp"

namespace wcdp {

/// Strict linear order [x1, ..., xn] over distinct program elements.
class LinearOrder {
public:
    LinearOrder() = default;
    LinearOrder(std::initializer_list<Element> items);
    explicit LinearOrder(std::vector<Element> items);

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    std::span<const Element> items() const { return items_; }
    const Element& operator[](std::size_t i) const { return items_[i]; }

    std::optional<std::size_t> position(Element x) const;
    bool contains(Element x) const { return position(x).has_value(); }
    /// True iff both are present and x precedes y.
    bool before(Element x, Element y) const;

    /// σ - [x]; throws std::invalid_argument when x is absent.
    LinearOrder remove(Element x) const;
    /// σ' with x placed at index `pos` (0 = first); x must be absent.
    LinearOrder insert_at(Element x, std::size_t pos) const;

    auto operator<=>(const LinearOrder&) const = default;

private:
    std::vector<Element> items_;
};

/// False iff some pair occurs in opposite relative order in the two sequences.
bool order_consistent(const LinearOrder& a, const LinearOrder& b);

/// All linear orders over the union whose restrictions equal `a` and `b`.
/// Throws std::invalid_argument when the orders are inconsistent.
std::vector<LinearOrder> order_combine(const LinearOrder& a, const LinearOrder& b);

}  // namespace wcdp
