#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wcdp/core/element.hpp"

namespace wcdp::dp {

/// One DP table entry θ = (n, M, C, R, σ, ρ, λ, D), stored relative to its node's bag.
///
/// Layout of the word vector: word 0 holds the bag size (bit 31: query flag); then three words per bag
/// element in bag order (membership flags, ρ, λ); then σ as element bits. Entries that are not
/// meaningful (ρ of an atom, λ of a constraint outside C) are kept at zero so that equal tuples have
/// equal words.
class BagAssignment {
public:
    enum Flag : std::uint32_t {
        kM = 1u << 0,    // atom in M
        kC = 1u << 1,    // constraint in C
        kR = 1u << 2,    // rule in R
        kRD = 1u << 3,   // rule in R_D
        kAD = 1u << 4,   // atom in A_D
        kHD = 1u << 5,   // constraint in H_D
        kBD = 1u << 6,   // constraint in B_D
        kPhi = 1u << 7,  // φ(c) = 1
    };

    BagAssignment() : data_{0} {}
    explicit BagAssignment(std::size_t bag_size);

    std::size_t bag_size() const { return data_[0] & kSizeMask; }
    bool query() const { return (data_[0] & kQueryBit) != 0; }
    void set_query(bool on) { data_[0] = on ? (data_[0] | kQueryBit) : (data_[0] & ~kQueryBit); }

    std::uint32_t flags(std::size_t slot) const { return data_[1 + 3 * slot]; }
    bool has(std::size_t slot, std::uint32_t flag) const { return (flags(slot) & flag) != 0; }
    void set(std::size_t slot, std::uint32_t flag, bool on = true) {
        auto& w = data_[1 + 3 * slot];
        w = on ? (w | flag) : (w & ~flag);
    }

    std::uint32_t rho(std::size_t slot) const { return data_[2 + 3 * slot]; }
    std::uint32_t lambda(std::size_t slot) const { return data_[3 + 3 * slot]; }
    void set_rho(std::size_t slot, std::uint32_t v) { data_[2 + 3 * slot] = v; }
    void set_lambda(std::size_t slot, std::uint32_t v) { data_[3 + 3 * slot] = v; }

    std::size_t order_size() const { return data_.size() - order_begin(); }
    Element order_at(std::size_t i) const;
    std::vector<Element> order() const;
    std::optional<std::size_t> order_position(Element e) const;
    void order_insert(Element e, std::size_t pos);
    /// Throws std::invalid_argument when e is not in σ.
    void order_erase(Element e);

    /// Opens an all-zero slot at bag position `slot` / drops the slot.
    void insert_slot(std::size_t slot);
    void erase_slot(std::size_t slot);

    const std::vector<std::uint32_t>& words() const { return data_; }
    std::size_t hash() const;

    bool operator==(const BagAssignment&) const = default;

private:
    static constexpr std::uint32_t kQueryBit = 1u << 31;
    static constexpr std::uint32_t kSizeMask = kQueryBit - 1;

    std::size_t order_begin() const { return 1 + 3 * bag_size(); }

    std::vector<std::uint32_t> data_;
};

struct BagAssignmentHash {
    std::size_t operator()(const BagAssignment& a) const { return a.hash(); }
};

}  // namespace wcdp::dp
