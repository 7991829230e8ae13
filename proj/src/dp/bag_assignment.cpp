#include "wcdp/dp/bag_assignment.hpp"

#include <algorithm>
#include <stdexcept>
#include <string_view>

namespace wcdp::dp {

BagAssignment::BagAssignment(std::size_t bag_size) : data_(1 + 3 * bag_size, 0) {
    if (bag_size > kSizeMask) throw std::length_error("bag too large");
    data_[0] = static_cast<std::uint32_t>(bag_size);
}

Element BagAssignment::order_at(std::size_t i) const {
    std::uint32_t bits = data_.at(order_begin() + i);
    return Element(static_cast<ElementKind>(bits >> 30), bits & ((1u << 30) - 1));
}

std::vector<Element> BagAssignment::order() const {
    std::vector<Element> out;
    out.reserve(order_size());
    for (std::size_t i = 0; i < order_size(); ++i) out.push_back(order_at(i));
    return out;
}

std::optional<std::size_t> BagAssignment::order_position(Element e) const {
    auto first = data_.begin() + static_cast<std::ptrdiff_t>(order_begin());
    auto it = std::find(first, data_.end(), e.bits());
    if (it == data_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - first);
}

void BagAssignment::order_insert(Element e, std::size_t pos) {
    if (pos > order_size()) throw std::out_of_range("order position out of range");
    data_.insert(data_.begin() + static_cast<std::ptrdiff_t>(order_begin() + pos), e.bits());
}

void BagAssignment::order_erase(Element e) {
    auto pos = order_position(e);
    if (!pos) throw std::invalid_argument("element not in order");
    data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(order_begin() + *pos));
}

void BagAssignment::insert_slot(std::size_t slot) {
    if (slot > bag_size()) throw std::out_of_range("slot out of range");
    data_.insert(data_.begin() + static_cast<std::ptrdiff_t>(1 + 3 * slot), 3, 0u);
    ++data_[0];
}

void BagAssignment::erase_slot(std::size_t slot) {
    if (slot >= bag_size()) throw std::out_of_range("slot out of range");
    auto first = data_.begin() + static_cast<std::ptrdiff_t>(1 + 3 * slot);
    data_.erase(first, first + 3);
    --data_[0];
}

std::size_t BagAssignment::hash() const {
    std::string_view bytes(reinterpret_cast<const char*>(data_.data()), data_.size() * sizeof(std::uint32_t));
    return std::hash<std::string_view>{}(bytes);
}

}  // namespace wcdp::dp
