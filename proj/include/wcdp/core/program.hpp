#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wcdp/core/element.hpp"

namespace wcdp {

enum class Polarity : std::uint8_t { kPositive, kNegative };

struct WeightLiteral {
    AtomId atom;
    Polarity polarity = Polarity::kPositive;
    std::uint32_t weight = 1;

    bool positive() const { return polarity == Polarity::kPositive; }
    bool operator==(const WeightLiteral&) const = default;
};

/// Missing upper bound is represented by std::nullopt and compares above every integer.
using UpperBound = std::optional<std::uint64_t>;

struct Constraint {
    std::string name;
    std::vector<WeightLiteral> clause;
    std::uint64_t lower = 0;
    UpperBound upper;

    bool operator==(const Constraint&) const = default;
};

struct Rule {
    std::string name;
    ConstraintId head;
    std::vector<ConstraintId> body;

    bool operator==(const Rule&) const = default;
};

enum class ProgramKind : std::uint8_t { kPCC, kPWC };

/// Immutable program (A, C, R). Construct through ProgramBuilder.
class Program {
public:
    Program() = default;

    std::size_t atom_count() const { return atom_names_.size(); }
    std::size_t constraint_count() const { return constraints_.size(); }
    std::size_t rule_count() const { return rules_.size(); }

    const std::string& atom_name(AtomId a) const { return atom_names_.at(a.value); }
    const Constraint& constraint(ConstraintId c) const { return constraints_.at(c.value); }
    const Rule& rule(RuleId r) const { return rules_.at(r.value); }

    std::span<const std::string> atom_names() const { return atom_names_; }
    std::span<const Constraint> constraints() const { return constraints_; }
    std::span<const Rule> rules() const { return rules_; }

    std::optional<AtomId> find_atom(std::string_view name) const;
    std::optional<ConstraintId> find_constraint(std::string_view name) const;
    std::optional<RuleId> find_rule(std::string_view name) const;

    /// PCC iff every literal has weight 1.
    ProgramKind kind() const { return kind_; }
    bool is_pcc() const { return kind_ == ProgramKind::kPCC; }

    std::string element_name(Element e) const;

    bool operator==(const Program&) const = default;

private:
    friend class ProgramBuilder;

    std::vector<std::string> atom_names_;
    std::vector<Constraint> constraints_;
    std::vector<Rule> rules_;
    ProgramKind kind_ = ProgramKind::kPCC;
};

/// Accumulates atoms, constraints and rules and validates them in build().
class ProgramBuilder {
public:
    AtomId add_atom(std::string name);
    /// Returns the existing id when the atom is already declared.
    AtomId atom(std::string_view name);
    ConstraintId add_constraint(std::string name, std::vector<WeightLiteral> clause, std::uint64_t lower = 0,
                                UpperBound upper = std::nullopt);
    RuleId add_rule(std::string name, ConstraintId head, std::vector<ConstraintId> body = {});

    std::size_t atom_count() const { return program_.atom_names_.size(); }
    std::size_t constraint_count() const { return program_.constraints_.size(); }
    std::size_t rule_count() const { return program_.rules_.size(); }

    std::optional<AtomId> find_atom(std::string_view name) const;
    std::optional<ConstraintId> find_constraint(std::string_view name) const;

    /// Throws ProgramError on any invariant violation.
    Program build() &&;
    Program build() const&;

private:
    Program program_;
    std::unordered_map<std::string, std::uint32_t> atom_index_;
    std::unordered_map<std::string, std::uint32_t> constraint_index_;
    std::unordered_map<std::string, std::uint32_t> rule_index_;
};

/// Starts a builder holding a copy of `p`, for transformations that extend a program.
ProgramBuilder builder_from(const Program& p);

/// A subset of the atoms of one program.
class Interpretation {
public:
    Interpretation() = default;
    explicit Interpretation(std::size_t universe) : bits_(universe, false) {}
    Interpretation(std::size_t universe, std::initializer_list<AtomId> atoms);

    static Interpretation from_mask(std::size_t universe, std::uint64_t mask);

    std::size_t universe() const { return bits_.size(); }
    bool contains(AtomId a) const { return bits_.at(a.value); }
    void insert(AtomId a) { bits_.at(a.value) = true; }
    void erase(AtomId a) { bits_.at(a.value) = false; }
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    std::vector<AtomId> members() const;

    bool subset_of(const Interpretation& other) const;
    bool proper_subset_of(const Interpretation& other) const { return subset_of(other) && *this != other; }

    auto operator<=>(const Interpretation&) const = default;

private:
    std::vector<bool> bits_;
};

std::string format_interpretation(const Program& p, const Interpretation& i);

}  // namespace wcdp
