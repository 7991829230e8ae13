#pragma once

// Seeded random programs for the property tests and the acceptance runner.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wcdp/core/program.hpp"

namespace wcdp::testing {

struct ProgramShape {
    std::size_t max_atoms = 6;
    std::size_t max_constraints = 6;
    std::size_t max_rules = 5;
    std::uint64_t max_bound = 3;
    std::uint32_t max_weight = 1;
    std::size_t max_clause = 3;
    std::size_t max_body = 2;
};

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// A random program within `shape`: at least one atom, constraint and rule.
inline Program random_program(std::mt19937_64& rng, const ProgramShape& shape) {
    ProgramBuilder b;
    const std::size_t atoms = pick(rng, 1, shape.max_atoms);
    const std::size_t cons = pick(rng, 1, shape.max_constraints);
    const std::size_t rules = pick(rng, 1, shape.max_rules);
    std::vector<AtomId> as;
    for (std::size_t i = 0; i < atoms; ++i) as.push_back(b.add_atom("p" + std::to_string(i + 1)));
    std::vector<ConstraintId> cs;
    for (std::size_t j = 0; j < cons; ++j) {
        std::vector<WeightLiteral> clause;
        std::vector<AtomId> pool = as;
        std::shuffle(pool.begin(), pool.end(), rng);
        const std::size_t len = pick(rng, 0, std::min(shape.max_clause, pool.size()));
        for (std::size_t k = 0; k < len; ++k) {
            auto w = static_cast<std::uint32_t>(pick(rng, 1, shape.max_weight));
            clause.push_back({pool[k], coin(rng, 0.3) ? Polarity::kNegative : Polarity::kPositive, w});
        }
        std::uint64_t lower = pick(rng, 0, shape.max_bound);
        UpperBound upper;
        if (coin(rng, 0.7)) upper = pick(rng, lower, shape.max_bound);
        cs.push_back(b.add_constraint("c" + std::to_string(j + 1), std::move(clause), lower, upper));
    }
    for (std::size_t k = 0; k < rules; ++k) {
        ConstraintId head = cs[pick(rng, 0, cs.size() - 1)];
        std::vector<ConstraintId> pool = cs;
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(pick(rng, 0, std::min(shape.max_body, pool.size())));
        b.add_rule("r" + std::to_string(k + 1), head, std::move(pool));
    }
    return std::move(b).build();
}

/// A path-like cardinality program with `links` atoms, constraints and rules: constraint k_i reads
/// x_i and ~x_{i-1}, and rule s_i derives k_i from k_{i-1}. Its only answer set makes every atom true.
inline Program chain_program(std::size_t links) {
    ProgramBuilder b;
    ConstraintId previous{};
    for (std::size_t i = 0; i < links; ++i) {
        const auto n = std::to_string(i + 1);
        AtomId a = b.add_atom("x" + n);
        std::vector<WeightLiteral> clause{{a, Polarity::kPositive, 1}};
        if (i > 0) clause.push_back({AtomId{static_cast<std::uint32_t>(i - 1)}, Polarity::kNegative, 1});
        ConstraintId c = b.add_constraint("k" + n, std::move(clause), 1, std::nullopt);
        std::vector<ConstraintId> body;
        if (i > 0) body.push_back(previous);
        b.add_rule("s" + n, c, std::move(body));
        previous = c;
    }
    return std::move(b).build();
}

}  // namespace wcdp::testing
