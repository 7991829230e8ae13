#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "wcdp/core/errors.hpp"
#include "wcdp/io/program_text.hpp"

using namespace wcdp;

TEST_CASE("parse the Example-1 program") {
    auto p = wcdp::testing::example1();
    CHECK(p.atom_count() == 3);
    CHECK(p.constraint_count() == 4);
    CHECK(p.rule_count() == 3);
    CHECK_FALSE(p.is_pcc());
    const auto& c1 = p.constraint(*p.find_constraint("c1"));
    CHECK(c1.lower == 0);
    CHECK(c1.upper == 5u);
    REQUIRE(c1.clause.size() == 3);
    CHECK(c1.clause[0].weight == 4);
    const auto& r3 = p.rule(*p.find_rule("r3"));
    CHECK(r3.head == *p.find_constraint("c3"));
    CHECK(r3.body == std::vector<ConstraintId>{*p.find_constraint("c4")});
}

TEST_CASE("parse edge cases") {
    auto e = io::parse_program("");
    CHECK(e.atom_count() == 0);
    CHECK(e.constraint_count() == 0);
    CHECK(e.rule_count() == 0);

    CHECK_THROWS_AS(io::parse_program("atom a\nconstraint c { 2 <= 1*a <= 1 }\n"), ProgramError);
    CHECK_THROWS_AS(io::parse_program("constraint c { 1*a }\n"), ParseError);
    CHECK_THROWS_AS(io::parse_program("atom a\nrule r: nope.\n"), ParseError);

    auto open = io::parse_program("atom a\nconstraint c { a + ~a }\nrule r: c :- c.\n");
    const auto& c = open.constraint(ConstraintId{0});
    CHECK(c.lower == 0);
    CHECK_FALSE(c.upper.has_value());
    CHECK(open.is_pcc());

    auto pinned = io::parse_program("constraint f { 1 <= <= 1 }\n");
    CHECK(pinned.constraint(ConstraintId{0}).clause.empty());
    CHECK(pinned.constraint(ConstraintId{0}).lower == 1);
}

TEST_CASE("syntax errors carry a position") {
    try {
        io::parse_program("atom a\nconstraint c { 1 <= 2** a }\n");
        FAIL("expected a parse error");
    } catch (const ParseError& err) {
        CHECK(err.line() == 2);
        CHECK(err.column() > 1);
    }
    CHECK_THROWS_AS(io::parse_program("rule r c.\n"), ParseError);
    CHECK_THROWS_AS(io::parse_program("atom 9a\n"), ParseError);
}

TEST_CASE("property: print then parse is the identity") {
    std::mt19937_64 rng(21);
    wcdp::testing::ProgramShape shape{6, 6, 5, 4, 3};
    for (int n = 0; n < 200; ++n) {
        auto p = wcdp::testing::random_program(rng, shape);
        auto text = io::print_program(p);
        auto q = io::parse_program(text);
        REQUIRE(q == p);
        REQUIRE(io::print_program(q) == text);
    }
}
