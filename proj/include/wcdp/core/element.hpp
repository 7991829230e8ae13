#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace wcdp {

template <class Tag>
struct Id {
    std::uint32_t value = 0;

    constexpr Id() = default;
    constexpr explicit Id(std::uint32_t v) : value(v) {}
    constexpr auto operator<=>(const Id&) const = default;
};

using AtomId = Id<struct AtomTag>;
using ConstraintId = Id<struct ConstraintTag>;
using RuleId = Id<struct RuleTag>;

enum class ElementKind : std::uint8_t { kAtom = 0, kConstraint = 1, kRule = 2 };

/// An atom, constraint or rule of a program packed into 32 bits.
/// Ordering is atoms < constraints < rules, then by id.
class Element {
public:
    constexpr Element() = default;
    constexpr Element(ElementKind kind, std::uint32_t index)
        : bits_((static_cast<std::uint32_t>(kind) << kShift) | index) {}
    constexpr Element(AtomId a) : Element(ElementKind::kAtom, a.value) {}
    constexpr Element(ConstraintId c) : Element(ElementKind::kConstraint, c.value) {}
    constexpr Element(RuleId r) : Element(ElementKind::kRule, r.value) {}

    constexpr ElementKind kind() const { return static_cast<ElementKind>(bits_ >> kShift); }
    constexpr std::uint32_t index() const { return bits_ & kMask; }
    constexpr std::uint32_t bits() const { return bits_; }

    constexpr bool is_atom() const { return kind() == ElementKind::kAtom; }
    constexpr bool is_constraint() const { return kind() == ElementKind::kConstraint; }
    constexpr bool is_rule() const { return kind() == ElementKind::kRule; }

    constexpr AtomId atom() const { return AtomId{index()}; }
    constexpr ConstraintId constraint() const { return ConstraintId{index()}; }
    constexpr RuleId rule() const { return RuleId{index()}; }

    constexpr auto operator<=>(const Element&) const = default;

private:
    static constexpr unsigned kShift = 30;
    static constexpr std::uint32_t kMask = (1u << kShift) - 1;
    std::uint32_t bits_ = 0;
};

}  // namespace wcdp

template <>
struct std::hash<wcdp::Element> {
    std::size_t operator()(const wcdp::Element& e) const noexcept { return std::hash<std::uint32_t>{}(e.bits()); }
};
