#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/fixtures.hpp"
#include "wcdp/app/pipeline.hpp"
#include "wcdp/core/errors.hpp"
#include "wcdp/transforms/reductions.hpp"

using namespace wcdp;
using namespace wcdp::app;

namespace {

SolveRequest request(Mode mode, std::optional<std::string> query = std::nullopt) {
    SolveRequest r;
    r.mode = mode;
    r.query = std::move(query);
    r.oracle = true;
    return r;
}

bool has_line(const Report& r, const std::string& line) {
    return std::find(r.extra.begin(), r.extra.end(), line) != r.extra.end();
}

}  // namespace

TEST_CASE("modes") {
    CHECK(parse_mode("consistency") == Mode::kConsistency);
    CHECK(parse_mode("witness") == Mode::kWitness);
    CHECK(parse_mode("enumerate") == Mode::kEnumerate);
    CHECK_FALSE(parse_mode("all").has_value());
    CHECK(structural_size(testing::example2()) == 8);
}

TEST_CASE("Example 2 end to end") {
    auto p = testing::example2();
    auto w = run(p, request(Mode::kWitness));
    CHECK(w.verdict == "CONSISTENT");
    CHECK(w.witness == std::optional<std::string>("{p1}"));
    CHECK(w.exit_code == 0);
    CHECK(has_line(w, "oracle: agree"));

    auto skeptical = run(p, request(Mode::kSkeptical, "p2"));
    CHECK(skeptical.verdict == "NO");
    CHECK(skeptical.exit_code == 1);
    auto credulous = run(p, request(Mode::kCredulous, "p1"));
    CHECK(credulous.verdict == "YES");
    CHECK(credulous.exit_code == 0);

    auto all = run(p, request(Mode::kEnumerate));
    CHECK(has_line(all, "answer set: {p1}"));

    auto imported = request(Mode::kConsistency);
    imported.td = "import:" + testing::data_path("example2.td");
    auto viaimport = run(p, imported);
    CHECK(viaimport.verdict == "CONSISTENT");
    CHECK(viaimport.width == 1);
    CHECK(viaimport.nodes == 14);
}

TEST_CASE("weighted programs go through the unary transform") {
    auto p1 = testing::example1();
    auto r = run(p1, request(Mode::kWitness));
    CHECK(r.verdict == "CONSISTENT");
    CHECK(r.exit_code == 0);
    CHECK(has_line(r, "oracle: agree"));

    auto imported = request(Mode::kConsistency);
    imported.td = "import:" + testing::data_path("example1.td");
    CHECK(run(p1, imported).verdict == "CONSISTENT");

    auto yes = run(transforms::partition_to_pwc({1, 2, 3}), request(Mode::kConsistency));
    CHECK(yes.verdict == "CONSISTENT");
    auto no = run(transforms::partition_to_pwc({1, 1, 4}), request(Mode::kConsistency));
    CHECK(no.verdict == "INCONSISTENT");
    CHECK(no.exit_code == 1);

    auto skeptical_none = run(io::parse_program("atom a\nconstraint h { 1 <= <= 1 }\nrule r: h.\n"),
                              request(Mode::kSkeptical, "a"));
    CHECK(skeptical_none.verdict == "YES");
}

TEST_CASE("request errors") {
    auto p = testing::example2();
    CHECK_THROWS_AS(run(p, request(Mode::kCredulous)), std::invalid_argument);
    CHECK_THROWS_AS(run(p, request(Mode::kCredulous, "zz")), std::invalid_argument);
    auto bad_td = request(Mode::kConsistency);
    bad_td.td = "widest";
    CHECK_THROWS_AS(run(p, bad_td), std::invalid_argument);

    auto heavy = io::parse_program("atom a\nconstraint c { 1000*a }\nrule r: c.\n");
    CHECK_THROWS_AS(prepare(heavy, false), RejectionError);
    CHECK(prepare(heavy, true).oracle_only);
    auto large = request(Mode::kConsistency);
    large.allow_large_weights = true;
    CHECK(run(heavy, large).verdict == "CONSISTENT");
}

TEST_CASE("trace output") {
    auto path = std::filesystem::temp_directory_path() / "wcdp_trace_test.txt";
    auto r = request(Mode::kConsistency);
    r.td = "import:" + testing::data_path("example2.td");
    r.trace_out = path.string();
    run(testing::example2(), r);
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str().find("Node n14: (r1-RR)") != std::string::npos);
    CHECK(text.str().find("Node n3: (c1-CI)") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("runs are deterministic") {
    auto p = io::parse_program_file(testing::data_path("corpus/mmo_square_r2.wcp"));
    auto r = request(Mode::kWitness);
    r.seed = 5;
    auto a = run(p, r);
    auto b = run(p, r);
    CHECK(a.verdict == b.verdict);
    CHECK(a.witness == b.witness);
    CHECK(a.width == b.width);
    CHECK(a.nodes == b.nodes);
    CHECK(a.table_max == b.table_max);
}
