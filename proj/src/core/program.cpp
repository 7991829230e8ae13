#include "wcdp/core/program.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "wcdp/core/errors.hpp"

namespace wcdp {

namespace {

template <class Range>
std::optional<std::uint32_t> find_by_name(const Range& names, std::string_view name) {
    for (std::uint32_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return i;
    }
    return std::nullopt;
}

std::string bound_text(const UpperBound& u) { return u ? std::to_string(*u) : std::string("inf"); }

}  // namespace

std::optional<AtomId> Program::find_atom(std::string_view name) const {
    if (auto i = find_by_name(atom_names_, name)) return AtomId{*i};
    return std::nullopt;
}

std::optional<ConstraintId> Program::find_constraint(std::string_view name) const {
    for (std::uint32_t i = 0; i < constraints_.size(); ++i) {
        if (constraints_[i].name == name) return ConstraintId{i};
    }
    return std::nullopt;
}

std::optional<RuleId> Program::find_rule(std::string_view name) const {
    for (std::uint32_t i = 0; i < rules_.size(); ++i) {
        if (rules_[i].name == name) return RuleId{i};
    }
    return std::nullopt;
}

std::string Program::element_name(Element e) const {
    switch (e.kind()) {
        case ElementKind::kAtom: return atom_name(e.atom());
        case ElementKind::kConstraint: return constraint(e.constraint()).name;
        case ElementKind::kRule: return rule(e.rule()).name;
    }
    return {};
}

AtomId ProgramBuilder::add_atom(std::string name) {
    if (name.empty()) throw ProgramError("atom name must not be empty");
    auto id = static_cast<std::uint32_t>(program_.atom_names_.size());
    if (!atom_index_.emplace(name, id).second) throw ProgramError("duplicate atom '" + name + "'");
    program_.atom_names_.push_back(std::move(name));
    return AtomId{id};
}

AtomId ProgramBuilder::atom(std::string_view name) {
    if (auto it = atom_index_.find(std::string(name)); it != atom_index_.end()) return AtomId{it->second};
    return add_atom(std::string(name));
}

std::optional<AtomId> ProgramBuilder::find_atom(std::string_view name) const {
    if (auto it = atom_index_.find(std::string(name)); it != atom_index_.end()) return AtomId{it->second};
    return std::nullopt;
}

std::optional<ConstraintId> ProgramBuilder::find_constraint(std::string_view name) const {
    if (auto it = constraint_index_.find(std::string(name)); it != constraint_index_.end()) {
        return ConstraintId{it->second};
    }
    return std::nullopt;
}

ConstraintId ProgramBuilder::add_constraint(std::string name, std::vector<WeightLiteral> clause,
                                            std::uint64_t lower, UpperBound upper) {
    if (name.empty()) throw ProgramError("constraint name must not be empty");
    auto id = static_cast<std::uint32_t>(program_.constraints_.size());
    if (!constraint_index_.emplace(name, id).second) throw ProgramError("duplicate constraint '" + name + "'");
    program_.constraints_.push_back(Constraint{std::move(name), std::move(clause), lower, upper});
    return ConstraintId{id};
}

RuleId ProgramBuilder::add_rule(std::string name, ConstraintId head, std::vector<ConstraintId> body) {
    if (name.empty()) throw ProgramError("rule name must not be empty");
    auto id = static_cast<std::uint32_t>(program_.rules_.size());
    if (!rule_index_.emplace(name, id).second) throw ProgramError("duplicate rule '" + name + "'");
    program_.rules_.push_back(Rule{std::move(name), head, std::move(body)});
    return RuleId{id};
}

Program ProgramBuilder::build() const& { return ProgramBuilder(*this).build(); }

Program ProgramBuilder::build() && {
    Program& p = program_;
    bool all_unit = true;
    for (auto& c : p.constraints_) {
        if (c.upper && c.lower > *c.upper) {
            throw ProgramError("constraint '" + c.name + "': lower bound " + std::to_string(c.lower) +
                               " exceeds upper bound " + bound_text(c.upper));
        }
        std::set<std::pair<std::uint32_t, Polarity>> seen;
        for (const auto& lit : c.clause) {
            if (lit.atom.value >= p.atom_names_.size()) {
                throw ProgramError("constraint '" + c.name + "' references an unknown atom");
            }
            if (lit.weight == 0) {
                throw ProgramError("constraint '" + c.name + "': literal weight must be positive");
            }
            if (!seen.emplace(lit.atom.value, lit.polarity).second) {
                throw ProgramError("constraint '" + c.name + "': duplicate literal over atom '" +
                                   p.atom_names_[lit.atom.value] + "'");
            }
            all_unit = all_unit && lit.weight == 1;
        }
    }
    for (auto& r : p.rules_) {
        if (r.head.value >= p.constraints_.size()) {
            throw ProgramError("rule '" + r.name + "' has an unknown head constraint");
        }
        for (auto b : r.body) {
            if (b.value >= p.constraints_.size()) {
                throw ProgramError("rule '" + r.name + "' has an unknown body constraint");
            }
        }
        std::sort(r.body.begin(), r.body.end());
        r.body.erase(std::unique(r.body.begin(), r.body.end()), r.body.end());
    }
    p.kind_ = all_unit ? ProgramKind::kPCC : ProgramKind::kPWC;
    return std::move(p);
}

ProgramBuilder builder_from(const Program& p) {
    ProgramBuilder b;
    for (const auto& name : p.atom_names()) b.add_atom(name);
    for (const auto& c : p.constraints()) b.add_constraint(c.name, c.clause, c.lower, c.upper);
    for (const auto& r : p.rules()) b.add_rule(r.name, r.head, r.body);
    return b;
}

Interpretation::Interpretation(std::size_t universe, std::initializer_list<AtomId> atoms) : bits_(universe, false) {
    for (auto a : atoms) insert(a);
}

Interpretation Interpretation::from_mask(std::size_t universe, std::uint64_t mask) {
    Interpretation i(universe);
    for (std::size_t k = 0; k < universe; ++k) i.bits_[k] = (mask >> k) & 1u;
    return i;
}

std::size_t Interpretation::size() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

std::vector<AtomId> Interpretation::members() const {
    std::vector<AtomId> out;
    for (std::uint32_t k = 0; k < bits_.size(); ++k) {
        if (bits_[k]) out.push_back(AtomId{k});
    }
    return out;
}

bool Interpretation::subset_of(const Interpretation& other) const {
    for (std::size_t k = 0; k < bits_.size(); ++k) {
        if (bits_[k] && !other.bits_.at(k)) return false;
    }
    return true;
}

std::string format_interpretation(const Program& p, const Interpretation& i) {
    std::string out = "{";
    bool first = true;
    for (auto a : i.members()) {
        if (!first) out += ", ";
        out += p.atom_name(a);
        first = false;
    }
    return out + "}";
}

}  // namespace wcdp
