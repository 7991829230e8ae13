#include <doctest.h>

#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "wcdp/core/errors.hpp"
#include "wcdp/core/semantics.hpp"
#include "wcdp/decomp/td_format.hpp"
#include "wcdp/dp/partial_solution.hpp"
#include "wcdp/dp/role_split.hpp"
#include "wcdp/dp/solver.hpp"
#include "wcdp/dp/trace.hpp"
#include "wcdp/transforms/reductions.hpp"
#include "wcdp/transforms/unary.hpp"

using namespace wcdp;
using namespace wcdp::dp;
using wcdp::testing::nice_of;
using wcdp::testing::word_set;

namespace {

SolverOptions exact_tables() {
    SolverOptions o;
    o.saturate = false;
    o.prune = false;
    o.keep_tables = true;
    return o;
}

decomp::NiceDecomposition imported_example2(const Program& p) {
    decomp::IncidenceGraph ig(p);
    return decomp::normalize(decomp::read_pace_file(testing::data_path("example2.td"), ig.vertex_count()));
}

// Node label -> set of entry lines, from the `Node <label>: ...` blocks of a trace.
std::map<std::string, std::set<std::string>> trace_blocks(std::istream& in) {
    std::map<std::string, std::set<std::string>> out;
    std::string line, current;
    while (std::getline(in, line)) {
        if (line.rfind("Node ", 0) == 0) {
            current = line.substr(5, line.find(':') - 5);
            out[current];
        } else if (!line.empty() && !current.empty()) {
            out[current].insert(line);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("leaf tables hold the empty assignment") {
    auto p = testing::example2();
    auto nd = imported_example2(p);
    decomp::IncidenceGraph ig(p);
    auto n1 = *nd.find_label("n1");
    NodeContext ctx(p, ig, nd, n1, {});
    auto leaf = leaf_assignments(ctx);
    REQUIRE(leaf.size() == 1);
    CHECK(leaf[0].bag_size() == 0);
    CHECK(leaf[0].order_size() == 0);
    CHECK_FALSE(leaf[0].query());
}

TEST_CASE("Example-2 trace matches the golden listing") {
    auto p = testing::example2();
    auto nd = imported_example2(p);
    DpSolver solver(p, nd, exact_tables());
    solver.run();
    std::stringstream produced;
    write_trace(solver, produced);
    std::ifstream golden_file(testing::data_path("example2.golden"));
    REQUIRE(golden_file);
    auto golden = trace_blocks(golden_file);
    auto ours = trace_blocks(produced);
    const std::map<std::string, std::size_t> sizes{{"n1", 1}, {"n2", 2}, {"n3", 8}, {"n4", 4}, {"n5", 9},
                                                   {"n6", 2}, {"n12", 2}, {"n13", 2}, {"n14", 1}};
    for (const auto& [label, lines] : golden) {
        CAPTURE(label);
        REQUIRE(ours.count(label) == 1);
        CHECK(ours[label] == lines);
        if (sizes.count(label)) CHECK(lines.size() == sizes.at(label));
    }
    CHECK(solver.consistent());
}

TEST_CASE("branch merge needs agreeing children") {
    auto p = testing::example2();
    auto nd = imported_example2(p);
    DpSolver solver(p, nd, exact_tables());
    solver.run();
    auto n13 = *nd.find_label("n13");
    const auto& ctx = solver.context(n13);
    REQUIRE(ctx.kind() == decomp::NodeKind::kB);
    const auto& kids = nd.nodes[n13].children;
    const auto& left = solver.table(kids[0]);
    const auto& right = solver.table(kids[1]);
    REQUIRE_FALSE(left.empty());
    REQUIRE_FALSE(right.empty());
    bool merged = false;
    for (const auto& a : left)
        for (const auto& b : right) {
            auto m = combine_branch(ctx, a, b);
            CHECK(m.has_value() == (branch_key(a) == branch_key(b)));
            merged = merged || m.has_value();
        }
    CHECK(merged);
    auto flipped = left[0];
    flipped.set(0, BagAssignment::kRD, !flipped.has(0, BagAssignment::kRD));
    CHECK_FALSE(combine_branch(ctx, left[0], flipped).has_value());
}

TEST_CASE("consistency examples") {
    auto p2 = testing::example2();
    CHECK(solve_consistency(p2, nice_of(p2)));
    CHECK(solve_consistency(p2, imported_example2(p2)));

    auto never = io::parse_program("atom a\nconstraint h { 1 <= <= 1 }\nrule r: h.\n");
    CHECK_FALSE(solve_consistency(never, nice_of(never)));

    Program empty;
    CHECK(solve_consistency(empty, nice_of(empty)));

    auto loop = io::parse_program_file(testing::data_path("corpus/even_loop.wcp"));
    CHECK(solve_consistency(loop, nice_of(loop)));
}

TEST_CASE("reasoning and witnesses") {
    auto p2 = testing::example2();
    auto nd = nice_of(p2);
    auto p1 = *p2.find_atom("p1");
    auto p2a = *p2.find_atom("p2");
    CHECK(solve_reasoning(p2, nd, p1, ReasoningMode::kCredulous));
    CHECK(solve_reasoning(p2, nd, p1, ReasoningMode::kSkeptical));
    CHECK_FALSE(solve_reasoning(p2, nd, p2a, ReasoningMode::kCredulous));
    CHECK_FALSE(solve_reasoning(p2, nd, p2a, ReasoningMode::kSkeptical));
    auto w = extract_witness(p2, nd);
    REQUIRE(w.has_value());
    CHECK(*w == testing::interp(p2, {"p1"}));

    auto loop = io::parse_program_file(testing::data_path("corpus/even_loop.wcp"));
    auto lnd = nice_of(loop);
    CHECK(solve_reasoning(loop, lnd, *loop.find_atom("a"), ReasoningMode::kCredulous));
    CHECK_FALSE(solve_reasoning(loop, lnd, *loop.find_atom("a"), ReasoningMode::kSkeptical));

    auto never = io::parse_program("atom a\nconstraint h { 1 <= <= 1 }\nrule r: h.\n");
    CHECK(solve_reasoning(never, nice_of(never), AtomId{0}, ReasoningMode::kSkeptical));
    CHECK_FALSE(extract_witness(never, nice_of(never)).has_value());

    auto part = transforms::partition_to_pwc({1, 2, 3});
    auto unary = transforms::unary_pwc_to_pcc(part);
    auto pw = extract_witness(unary.program, nice_of(unary.program));
    REQUIRE(pw.has_value());
    CHECK(is_stable(*pw, unary.program));
    CHECK(is_stable(testing::restrict_to(*pw, part.atom_count()), part));
}

TEST_CASE("the PWC guard") {
    auto p1 = testing::example1();
    CHECK_THROWS_AS(DpSolver(p1, nice_of(p1)), RejectionError);
}

TEST_CASE("a constraint in both roles needs the split") {
    auto p = io::parse_program_file(testing::data_path("corpus/head_and_body.wcp"));
    auto nd = nice_of(p);
    REQUIRE(enumerate_answer_sets(p).size() == 1);
    DpSolver raw(p, nd);
    raw.run();
    CHECK_FALSE(raw.consistent());
    CHECK(solve_consistency(p, nd));
    auto w = extract_witness(p, nd);
    REQUIRE(w.has_value());
    CHECK(*w == testing::interp(p, {"p1", "p2"}));
}

TEST_CASE("property: answers agree with the exhaustive oracle") {
    std::mt19937_64 rng(41);
    for (int n = 0; n < 300; ++n) {
        auto p = testing::random_program(rng, {});
        CAPTURE(io::print_program(p));
        auto sets = enumerate_answer_sets(p);
        auto nd = nice_of(p);
        REQUIRE(solve_consistency(p, nd) == !sets.empty());
        AtomId q{0};
        bool cred = false, skep = true;
        for (const auto& s : sets) {
            cred = cred || s.contains(q);
            skep = skep && s.contains(q);
        }
        CHECK(solve_reasoning(p, nd, q, ReasoningMode::kCredulous) == cred);
        CHECK(solve_reasoning(p, nd, q, ReasoningMode::kSkeptical) == skep);
        auto w = extract_witness(p, nd);
        CHECK(w.has_value() == !sets.empty());
        if (w) CHECK(is_stable(*w, p));
    }
}

TEST_CASE("property: tables equal the projected partial solutions") {
    std::mt19937_64 rng(43);
    testing::ProgramShape shape{4, 4, 3, 2, 1, 3, 2};
    for (int n = 0; n < 60; ++n) {
        auto p = testing::random_program(rng, shape);
        CAPTURE(io::print_program(p));
        auto nd = nice_of(p);
        DpSolver solver(p, nd, exact_tables());
        solver.run();
        for (std::uint32_t node = 0; node < nd.node_count(); ++node) {
            CAPTURE(nd.nodes[node].label);
            REQUIRE(word_set(solver.table(node)) == word_set(bag_models(p, nd, node)));
        }
    }
}

TEST_CASE("property: the layered oracle agrees with literal enumeration") {
    std::mt19937_64 rng(47);
    testing::ProgramShape shape{2, 2, 2, 2, 1, 2, 1};
    int compared = 0;
    for (int n = 0; n < 40; ++n) {
        auto p = testing::random_program(rng, shape);
        auto nd = nice_of(p);
        DpSolver solver(p, nd, exact_tables());
        solver.run();
        for (std::uint32_t node = 0; node < nd.node_count(); ++node) {
            std::vector<BagAssignment> literal;
            try {
                for (const auto& ps : enumerate_partial_solutions(p, nd, node, 6))
                    literal.push_back(project(solver.context(node), ps));
            } catch (const CapacityError&) {
                continue;
            }
            CAPTURE(io::print_program(p));
            CAPTURE(nd.nodes[node].label);
            CHECK(word_set(literal) == word_set(bag_models(p, nd, node)));
            ++compared;
        }
    }
    CHECK(compared > 100);
}

TEST_CASE("property: answers do not depend on the decomposition or the count representation") {
    std::mt19937_64 rng(53);
    testing::ProgramShape shape;
    shape.max_bound = 4;
    for (int n = 0; n < 120; ++n) {
        auto p = testing::random_program(rng, shape);
        const bool expected = !enumerate_answer_sets(p).empty();
        for (auto h : {decomp::Heuristic::kMinFill, decomp::Heuristic::kMinDegree})
            for (std::uint64_t seed : {1u, 2u, 3u}) CHECK(solve_consistency(p, nice_of(p, h, seed)) == expected);
        SolverOptions plain;
        plain.saturate = false;
        plain.prune = false;
        CHECK(solve_consistency(p, nice_of(p), plain) == expected);
    }
}

TEST_CASE("property: table entries are distinct and well-formed") {
    std::mt19937_64 rng(59);
    for (int n = 0; n < 100; ++n) {
        auto p = testing::random_program(rng, {});
        auto split = split_roles(p).program;
        auto nd = nice_of(split);
        SolverOptions o;
        o.keep_tables = true;
        DpSolver solver(split, nd, o);
        solver.run();
        CHECK(solver.stats().ceiling_violations == 0);
        for (std::uint32_t node = 0; node < nd.node_count(); ++node) {
            const auto& ctx = solver.context(node);
            const auto& table = solver.table(node);
            REQUIRE(word_set(table).size() == table.size());
            for (const auto& a : table) {
                REQUIRE(a.bag_size() == ctx.size());
                std::set<Element> expected_order;
                for (std::size_t s = 0; s < ctx.size(); ++s) {
                    Element e = ctx.bag()[s];
                    const auto f = a.flags(s);
                    if (e.is_atom()) {
                        CHECK((f & ~(BagAssignment::kM | BagAssignment::kAD)) == 0);
                        if (f & BagAssignment::kAD) CHECK((f & BagAssignment::kM) != 0);
                        CHECK(a.rho(s) == 0);
                        if (f & BagAssignment::kM) expected_order.insert(e);
                    } else if (e.is_constraint()) {
                        CHECK((f & (BagAssignment::kM | BagAssignment::kAD | BagAssignment::kR | BagAssignment::kRD)) == 0);
                        if (f & BagAssignment::kPhi) CHECK((f & BagAssignment::kHD) != 0);
                        if (!(f & BagAssignment::kC)) CHECK(a.lambda(s) == 0);
                        if (f & BagAssignment::kC) expected_order.insert(e);
                    } else {
                        CHECK((f & ~(BagAssignment::kR | BagAssignment::kRD)) == 0);
                        expected_order.insert(e);
                    }
                }
                auto order = a.order();
                CHECK(std::set<Element>(order.begin(), order.end()) == expected_order);
                CHECK(order.size() == expected_order.size());
            }
        }
    }
}

TEST_CASE("property: the role split keeps answer sets") {
    std::mt19937_64 rng(61);
    for (int n = 0; n < 200; ++n) {
        auto p = testing::random_program(rng, {});
        auto split = split_roles(p);
        CHECK(split.program.atom_count() == p.atom_count());
        CHECK(enumerate_answer_sets(split.program) == enumerate_answer_sets(p));
        for (const auto& r : split.program.rules())
            for (auto b : r.body)
                for (const auto& r2 : split.program.rules()) CHECK(r2.head != b);
        decomp::IncidenceGraph ig(p);
        auto td = decomp::heuristic_decompose(ig.graph());
        auto ext = extend_td_for_split(td, p, split);
        CHECK(decomp::validate_td(decomp::IncidenceGraph(split.program).graph(), ext));
    }
}
