#include <doctest.h>

#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "wcdp/decomp/incidence_graph.hpp"
#include "wcdp/decomp/nice_decomposition.hpp"
#include "wcdp/decomp/td_format.hpp"
#include "wcdp/decomp/tree_decomposition.hpp"
#include "wcdp/transforms/reductions.hpp"

using namespace wcdp;
using namespace wcdp::decomp;

namespace {

// Every vertex of the graph is removed exactly once on each root path, and bags follow the shapes.
void check_nice(const Graph& g, const NiceDecomposition& nd) {
    REQUIRE_FALSE(nice_violation(nd).has_value());
    REQUIRE(validate_td(g, nd.underlying()));
    REQUIRE(nd.nodes[nd.root].bag.empty());
    std::set<std::string> labels;
    for (const auto& n : nd.nodes) {
        if (n.children.empty()) CHECK(n.bag.empty());
        labels.insert(n.label);
    }
    CHECK(labels.size() == nd.nodes.size());
}

}  // namespace

TEST_CASE("incidence graph sizes") {
    auto g1 = build_incidence_graph(testing::example1());
    CHECK(g1.vertex_count() == 10);
    CHECK(g1.edge_count() == 11);
    CHECK(g1.atom_count() == 3);
    CHECK(g1.constraint_count() == 4);
    CHECK(g1.rule_count() == 3);

    auto p2 = testing::example2();
    auto g2 = build_incidence_graph(p2);
    CHECK(g2.vertex_count() == 5);
    CHECK(g2.edge_count() == 4);
    Vertex p1 = g2.vertex(*p2.find_atom("p1"));
    Vertex c1 = g2.vertex(*p2.find_constraint("c1"));
    Vertex r1 = g2.vertex(*p2.find_rule("r1"));
    CHECK(p1 == 0);
    CHECK(c1 == 2);
    CHECK(r1 == 4);
    CHECK(g2.label(p1, c1).positive);
    CHECK(g2.label(c1, r1).head);
    CHECK(g2.label(g2.vertex(*p2.find_constraint("c2")), r1).body);
    CHECK(g2.element(3) == Element(*p2.find_constraint("c2")));

    auto empty = build_incidence_graph(Program{});
    CHECK(empty.vertex_count() == 0);
    CHECK(empty.edge_count() == 0);
}

TEST_CASE("constraint width") {
    CHECK(constraint_width(testing::example1()) == 5);
    CHECK(constraint_width(testing::example2()) == 1);
    CHECK(constraint_width(io::parse_program("atom a\nconstraint c { a }\nrule r: c.\n")) == 0);
}

TEST_CASE("heuristic decompositions are valid") {
    auto g2 = build_incidence_graph(testing::example2()).graph();
    for (auto h : {Heuristic::kMinFill, Heuristic::kMinDegree}) {
        auto td = heuristic_decompose(g2, h);
        CHECK(validate_td(g2, td));
        CHECK(td.width() <= 2);
    }
    auto part = transforms::partition_to_pwc({1, 2, 3});
    auto gp = build_incidence_graph(part).graph();
    CHECK(heuristic_decompose(gp).width() == 1);
    CHECK(parse_heuristic("min-degree") == Heuristic::kMinDegree);
    CHECK_FALSE(parse_heuristic("best").has_value());
}

TEST_CASE("tree decomposition validation") {
    auto p1 = testing::example1();
    auto g1 = build_incidence_graph(p1).graph();
    auto td = read_pace_file(testing::data_path("example1.td"), g1.vertex_count());
    CHECK(td.node_count() == 19);
    CHECK(validate_td(g1, td));
    CHECK(td.width() == 2);

    TreeDecomposition single;
    single.bags.push_back({});
    for (Vertex v = 0; v < g1.vertex_count(); ++v) single.bags[0].push_back(v);
    CHECK(validate_td(g1, single));

    // Bag 14 is the only one covering the p1-c1 edge.
    auto broken = td;
    auto& bag = broken.bags[13];
    bag.erase(std::find(bag.begin(), bag.end(), Vertex{3}));
    CHECK_FALSE(validate_td(g1, broken));
    CHECK(td_violation(g1, broken).has_value());

    auto cyclic = td;
    cyclic.edges.emplace_back(0, 18);
    CHECK_FALSE(validate_td(g1, cyclic));
}

TEST_CASE("normalization") {
    auto p2 = testing::example2();
    auto g2 = build_incidence_graph(p2).graph();
    auto fig = read_pace_file(testing::data_path("example2.td"), g2.vertex_count());
    auto nd = normalize(fig);
    check_nice(g2, nd);
    CHECK(nd.width() == 1);
    CHECK(nd.node_count() == 14);
    for (int i = 1; i <= 14; ++i) CHECK(nd.find_label("n" + std::to_string(i)).has_value());
    CHECK(nd.nodes[nd.root].label == "n14");
    CHECK(nd.nodes[*nd.find_label("n13")].shape == NiceShape::kBranch);

    IncidenceGraph ig(p2);
    CHECK(classify(nd.nodes[*nd.find_label("n3")], ig) == NodeKind::kCI);
    CHECK(classify(nd.nodes[*nd.find_label("n4")], ig) == NodeKind::kAR);
    CHECK(classify(nd.nodes[*nd.find_label("n5")], ig) == NodeKind::kRI);
    CHECK(classify(nd.nodes[*nd.find_label("n14")], ig) == NodeKind::kRR);

    TreeDecomposition one;
    one.bags.push_back({});
    auto trivial = normalize(one);
    CHECK(trivial.node_count() == 1);
    CHECK(trivial.nodes[0].shape == NiceShape::kLeaf);

    auto p1 = testing::example1();
    auto g1 = build_incidence_graph(p1).graph();
    auto ex = normalize(read_pace_file(testing::data_path("example1.td"), g1.vertex_count()));
    check_nice(g1, ex);
    CHECK(ex.width() == 2);
}

TEST_CASE("PACE round trip") {
    auto p1 = testing::example1();
    IncidenceGraph ig(p1);
    auto td = heuristic_decompose(ig.graph());
    std::istringstream in(write_pace(td, ig, p1));
    auto back = read_pace(in, ig.vertex_count());
    CHECK(back.bags == td.bags);
    CHECK(validate_td(ig.graph(), back));

    std::istringstream bad("s td 1 2 3\nb 1 1 7\n");
    CHECK_THROWS(read_pace(bad, 3));
}

TEST_CASE("property: nice decompositions of random programs") {
    std::mt19937_64 rng(31);
    for (int n = 0; n < 150; ++n) {
        auto p = testing::random_program(rng, {});
        IncidenceGraph ig(p);
        for (auto h : {Heuristic::kMinFill, Heuristic::kMinDegree}) {
            for (std::optional<std::uint64_t> seed : {std::optional<std::uint64_t>{}, std::optional<std::uint64_t>{n}}) {
                auto td = heuristic_decompose(ig.graph(), h, seed);
                REQUIRE(validate_td(ig.graph(), td));
                auto nd = normalize(td);
                check_nice(ig.graph(), nd);
                CHECK(nd.width() == td.width());
            }
        }
    }
}

TEST_CASE("corpus programs decompose cleanly") {
    for (const auto& entry : std::filesystem::directory_iterator(testing::data_path("corpus"))) {
        if (entry.path().extension() != ".wcp") continue;
        CAPTURE(entry.path().string());
        auto p = io::parse_program_file(entry.path().string());
        IncidenceGraph ig(p);
        for (auto h : {Heuristic::kMinFill, Heuristic::kMinDegree}) check_nice(ig.graph(), normalize(heuristic_decompose(ig.graph(), h)));
    }
}
