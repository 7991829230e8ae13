#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "wcdp/core/errors.hpp"
#include "wcdp/core/semantics.hpp"
#include "wcdp/transforms/reductions.hpp"
#include "wcdp/transforms/unary.hpp"

using namespace wcdp;
using wcdp::testing::interp;

namespace {

const Constraint& con(const Program& p, std::string_view name) { return p.constraint(*p.find_constraint(name)); }

Program empty_program() { return ProgramBuilder{}.build(); }

}  // namespace

TEST_CASE("weight_of") {
    auto p1 = wcdp::testing::example1();
    CHECK(weight_of(con(p1, "c1"), interp(p1, {"p1", "p3"})) == 5);
    Constraint empty{"e", {}, 0, std::nullopt};
    CHECK(weight_of(empty, interp(p1, {"p1", "p2"})) == 0);
    auto p2 = wcdp::testing::example2();
    CHECK(weight_of(con(p2, "c2"), interp(p2, {})) == 1);
}

TEST_CASE("satisfies_constraint") {
    auto p1 = wcdp::testing::example1();
    CHECK_FALSE(satisfies_constraint(interp(p1, {"p1", "p2"}), con(p1, "c1")));
    Constraint vacuous{"v", {}, 0, std::nullopt};
    CHECK(satisfies_constraint(interp(p1, {"p1", "p2", "p3"}), vacuous));
    auto p2 = wcdp::testing::example2();
    CHECK(satisfies_constraint(interp(p2, {"p1"}), con(p2, "c1")));
}

TEST_CASE("is_model") {
    auto p2 = wcdp::testing::example2();
    CHECK(is_model(interp(p2, {"p1"}), p2));
    CHECK_FALSE(is_model(interp(p2, {}), p2));
    auto e = empty_program();
    CHECK(is_model(Interpretation(0), e));
}

TEST_CASE("reduct") {
    auto p2 = wcdp::testing::example2();
    auto r = reduct(p2, interp(p2, {"p1"}));
    REQUIRE(r.rules.size() == 1);
    CHECK(r.rules[0].head == *p2.find_atom("p1"));
    REQUIRE(r.rules[0].body.size() == 1);
    CHECK(r.rules[0].body[0].clause.empty());
    CHECK(r.rules[0].body[0].lower == 0);

    CHECK(reduct(p2, interp(p2, {})).rules.empty());

    auto part = transforms::partition_to_pwc({1, 2, 3});
    auto rp = reduct(part, interp(part, {"a1", "a2"}));
    REQUIRE(rp.rules.size() == 2);
    CHECK(rp.rules[0].head == *part.find_atom("a1"));
    CHECK(rp.rules[1].head == *part.find_atom("a2"));
    for (const auto& rule : rp.rules) CHECK(rule.body.empty());
}

TEST_CASE("models_reduct") {
    ReductProgram r{{ReductRule{AtomId{0}, {ReductConstraint{{}, 0}}}}};
    CHECK_FALSE(models_reduct(Interpretation(1), r));
    CHECK(models_reduct(Interpretation(1, {AtomId{0}}), r));
    CHECK(models_reduct(Interpretation(1), ReductProgram{}));
}

TEST_CASE("is_stable examples") {
    auto p2 = wcdp::testing::example2();
    CHECK(is_stable(interp(p2, {"p1"}), p2));
    CHECK_FALSE(is_stable(interp(p2, {"p1", "p2"}), p2));
    for (std::uint64_t m = 0; m < 4; ++m) {
        auto i = Interpretation::from_mask(2, m);
        CHECK(is_stable(i, p2) == (i == interp(p2, {"p1"})));
    }
    auto e = empty_program();
    CHECK(is_stable(Interpretation(0), e));
    CHECK(is_stable_by_subsets(Interpretation(0), e));
}

TEST_CASE("is_stable_ordered examples") {
    auto p2 = wcdp::testing::example2();
    CHECK(is_stable_ordered(interp(p2, {"p1"}), p2));
    CHECK(is_stable_ordered(interp(p2, {}), p2) == is_model(interp(p2, {}), p2));

    // The weighted Example-1 program is rejected; its cardinality form is checked instead,
    // with every copy of p2 following p2.
    auto p1 = wcdp::testing::example1();
    CHECK_THROWS_AS(is_stable_ordered(interp(p1, {"p2"}), p1), RejectionError);
    auto pcc = transforms::unary_pwc_to_pcc(p1).program;
    Interpretation i(pcc.atom_count());
    for (std::uint32_t a = 0; a < pcc.atom_count(); ++a) {
        if (pcc.atom_names()[a] == "p2" || pcc.atom_names()[a].rfind("p2__", 0) == 0) i.insert(AtomId{a});
    }
    CHECK(is_stable_ordered(i, pcc) == is_stable(i, pcc));
}

TEST_CASE("enumerate_answer_sets examples") {
    auto p2 = wcdp::testing::example2();
    CHECK(wcdp::testing::names_of(p2, enumerate_answer_sets(p2)) == std::vector<std::string>{"{p1}"});
    auto e = empty_program();
    CHECK(wcdp::testing::names_of(e, enumerate_answer_sets(e)) == std::vector<std::string>{"{}"});
    auto part = transforms::partition_to_pwc({1, 2, 3});
    auto as = wcdp::testing::names_of(part, enumerate_answer_sets(part));
    std::sort(as.begin(), as.end());
    CHECK(as == std::vector<std::string>{"{a1, a2}", "{a3}"});

    ProgramBuilder big;
    for (int i = 0; i < 21; ++i) big.add_atom("x" + std::to_string(i));
    CHECK_THROWS_AS(enumerate_answer_sets(std::move(big).build()), CapacityError);
}

TEST_CASE("car and car_ord") {
    auto p2 = wcdp::testing::example2();
    const auto c1 = *p2.find_constraint("c1");
    CHECK(car(con(p2, "c2"), interp(p2, {}), interp(p2, {"p2"})) == 1);
    CHECK(car(con(p2, "c1"), interp(p2, {"p1"}), interp(p2, {"p1"})) == 1);
    Constraint empty{"e", {}, 0, std::nullopt};
    CHECK(car(empty, interp(p2, {}), interp(p2, {})) == 0);

    const auto u = interp(p2, {"p1"});
    CHECK(car_ord(con(p2, "c1"), c1, u, u, LinearOrder{Element(*p2.find_atom("p1")), Element(c1)}) == 1);
    CHECK(car_ord(con(p2, "c1"), c1, u, u, LinearOrder{Element(c1), Element(*p2.find_atom("p1"))}) == 0);
    CHECK(car_ord(empty, c1, u, u, LinearOrder{Element(c1), Element(*p2.find_atom("p1"))}) == 0);
    CHECK_THROWS_AS(car_ord(con(p2, "c1"), c1, u, u, LinearOrder{Element(*p2.find_atom("p1"))}), std::invalid_argument);
}

TEST_CASE("program invariants") {
    ProgramBuilder b;
    auto a = b.add_atom("a");
    CHECK_THROWS_AS(b.add_atom("a"), ProgramError);
    b.add_constraint("bad", {{a, Polarity::kPositive, 1}}, 2, 1);
    CHECK_THROWS_AS(b.build(), ProgramError);

    ProgramBuilder d;
    auto x = d.add_atom("x");
    d.add_constraint("dup", {{x, Polarity::kPositive, 1}, {x, Polarity::kPositive, 2}});
    CHECK_THROWS_AS(d.build(), ProgramError);

    ProgramBuilder z;
    auto y = z.add_atom("y");
    z.add_constraint("zero", {{y, Polarity::kPositive, 0}});
    CHECK_THROWS_AS(z.build(), ProgramError);

    ProgramBuilder both;
    auto q = both.add_atom("q");
    both.add_constraint("ok", {{q, Polarity::kPositive, 1}, {q, Polarity::kNegative, 1}}, 1, 1);
    auto p = both.build();
    CHECK(p.is_pcc());
}

TEST_CASE("linear orders") {
    const Element a(AtomId{0}), b(AtomId{1}), c(AtomId{2});
    CHECK_FALSE(order_consistent(LinearOrder{a, b}, LinearOrder{b, a}));
    CHECK(order_consistent(LinearOrder{a, b}, LinearOrder{b, c}));
    CHECK(order_consistent(LinearOrder{a, b, c}, LinearOrder{a, b, c}));

    auto two = order_combine(LinearOrder{a}, LinearOrder{b});
    CHECK(two.size() == 2);
    CHECK(order_combine(LinearOrder{a, b}, LinearOrder{a, b}) == std::vector<LinearOrder>{LinearOrder{a, b}});
    auto three = order_combine(LinearOrder{a, b}, LinearOrder{c});
    std::sort(three.begin(), three.end());
    std::vector<LinearOrder> want{LinearOrder{c, a, b}, LinearOrder{a, c, b}, LinearOrder{a, b, c}};
    std::sort(want.begin(), want.end());
    CHECK(three == want);
    CHECK_THROWS_AS(order_combine(LinearOrder{a, b}, LinearOrder{b, a}), std::invalid_argument);

    CHECK(LinearOrder{a, b, c}.remove(b) == LinearOrder{a, c});
    CHECK(LinearOrder{a}.remove(a) == LinearOrder{});
    const Element r1(RuleId{0}), c1(ConstraintId{0});
    CHECK(LinearOrder{r1, c1}.remove(r1) == LinearOrder{c1});
    CHECK_THROWS_AS(LinearOrder{a}.remove(b), std::invalid_argument);
}

TEST_CASE("property: both stability checks agree") {
    std::mt19937_64 rng(11);
    wcdp::testing::ProgramShape shape{5, 5, 5, 4, 3};
    for (int n = 0; n < 150; ++n) {
        auto p = wcdp::testing::random_program(rng, shape);
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << p.atom_count()); ++m) {
            auto i = Interpretation::from_mask(p.atom_count(), m);
            REQUIRE(is_stable(i, p) == is_stable_by_subsets(i, p));
        }
    }
}

TEST_CASE("property: order characterization agrees on cardinality programs") {
    std::mt19937_64 rng(12);
    wcdp::testing::ProgramShape shape{5, 5, 5, 3, 1};
    for (int n = 0; n < 150; ++n) {
        auto p = wcdp::testing::random_program(rng, shape);
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << p.atom_count()); ++m) {
            auto i = Interpretation::from_mask(p.atom_count(), m);
            REQUIRE(is_stable_ordered(i, p) == is_stable(i, p));
        }
    }
}

TEST_CASE("property: reduct constraints are monotone") {
    std::mt19937_64 rng(13);
    wcdp::testing::ProgramShape shape{5, 4, 4, 4, 3};
    for (int n = 0; n < 60; ++n) {
        auto p = wcdp::testing::random_program(rng, shape);
        const std::uint64_t full = std::uint64_t{1} << p.atom_count();
        auto r = reduct(p, Interpretation::from_mask(p.atom_count(), rng() % full));
        for (const auto& rule : r.rules) {
            for (const auto& c : rule.body) {
                for (const auto& lit : c.clause) CHECK(lit.positive());
                for (std::uint64_t j = 0; j < full; ++j) {
                    for (std::uint64_t k = j;; k = (k + 1) | j) {  // supersets of j
                        if (satisfies_reduct_constraint(Interpretation::from_mask(p.atom_count(), j), c)) {
                            REQUIRE(satisfies_reduct_constraint(Interpretation::from_mask(p.atom_count(), k), c));
                        }
                        if (k == full - 1) break;
                    }
                }
            }
        }
    }
}

TEST_CASE("property: weight and cardinality coincide on cardinality programs") {
    std::mt19937_64 rng(14);
    wcdp::testing::ProgramShape shape{6, 5, 1, 3, 1};
    for (int n = 0; n < 100; ++n) {
        auto p = wcdp::testing::random_program(rng, shape);
        const auto all = Interpretation::from_mask(p.atom_count(), (std::uint64_t{1} << p.atom_count()) - 1);
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << p.atom_count()); ++m) {
            auto i = Interpretation::from_mask(p.atom_count(), m);
            for (const auto& c : p.constraints()) REQUIRE(weight_of(c, i) == car(c, i, all));
        }
    }
}

TEST_CASE("property: car minus car_ord counts positive atoms after the constraint") {
    std::mt19937_64 rng(15);
    wcdp::testing::ProgramShape shape{5, 4, 1, 3, 1};
    for (int n = 0; n < 100; ++n) {
        auto p = wcdp::testing::random_program(rng, shape);
        const std::uint64_t full = (std::uint64_t{1} << p.atom_count()) - 1;
        auto universe = Interpretation::from_mask(p.atom_count(), full);
        auto i = Interpretation::from_mask(p.atom_count(), rng() & full);
        for (std::uint32_t ci = 0; ci < p.constraint_count(); ++ci) {
            std::vector<Element> items;
            for (auto a : i.members()) items.push_back(Element(a));
            items.push_back(Element(ConstraintId{ci}));
            std::shuffle(items.begin(), items.end(), rng);
            LinearOrder order(items);
            const auto& c = p.constraint(ConstraintId{ci});
            std::uint64_t after = 0;
            for (const auto& lit : c.clause) {
                if (lit.positive() && i.contains(lit.atom) && order.before(Element(ConstraintId{ci}), Element(lit.atom))) ++after;
            }
            REQUIRE(car(c, i, universe) - car_ord(c, ConstraintId{ci}, i, universe, order) == after);
        }
    }
}
