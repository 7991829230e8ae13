// Command-line front end: solve, decompose, trace, and instance generators.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wcdp/app/pipeline.hpp"
#include "wcdp/core/errors.hpp"
#include "wcdp/core/semantics.hpp"
#include "wcdp/decomp/incidence_graph.hpp"
#include "wcdp/decomp/td_format.hpp"
#include "wcdp/dp/solver.hpp"
#include "wcdp/dp/trace.hpp"
#include "wcdp/io/program_text.hpp"
#include "wcdp/transforms/reductions.hpp"

using namespace wcdp;
using nlohmann::json;

namespace {

Program load(const std::string& path) {
    if (path.empty() || path == "-") {
        std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
        return io::parse_program(text);
    }
    return io::parse_program_file(path);
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << text;
}

void emit_meta(const json& meta, const std::string& out, const std::string& meta_path) {
    std::string path = meta_path;
    if (path.empty() && !out.empty() && out != "-") path = out + ".meta.json";
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << meta.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Answer-set solving for weight constraint programs over tree decompositions"};
    app.require_subcommand(1);

    std::string input;
    std::string mode_name = "consistency";
    std::string query;
    std::string td = "min-fill";
    std::string trace_out;
    std::string out;
    std::string meta_path;
    std::uint64_t seed = 0;
    bool oracle = false;
    bool allow_large = false;

    auto* solve = app.add_subcommand("solve", "Decide consistency or reasoning queries");
    solve->add_option("program", input, "Program file ('-' or nothing for standard input)");
    solve->add_option("--mode", mode_name, "consistency, credulous, skeptical, enumerate or witness")
        ->check(CLI::IsMember({"consistency", "credulous", "skeptical", "enumerate", "witness"}));
    solve->add_option("--query", query, "Query atom for credulous/skeptical");
    solve->add_option("--td", td, "min-fill, min-degree or import:<path>");
    auto* seed_opt = solve->add_option("--seed", seed, "Tie-breaking seed for the heuristics");
    solve->add_flag("--oracle", oracle, "Cross-check against exhaustive enumeration");
    solve->add_option("--trace-out", trace_out, "Write the per-node tables here");
    solve->add_flag("--allow-large-weights", allow_large, "Answer binary-scale weights by enumeration only");

    auto* decompose = app.add_subcommand("decompose", "Print a tree decomposition of the incidence graph");
    decompose->add_option("program", input, "Program file");
    decompose->add_option("--td", td, "min-fill or min-degree");
    auto* dseed_opt = decompose->add_option("--seed", seed, "Tie-breaking seed");
    decompose->add_option("-o,--out", out, "Output path");

    auto* trace = app.add_subcommand("trace", "Print every node's table");
    trace->add_option("program", input, "Program file");
    trace->add_option("--td", td, "min-fill, min-degree or import:<path>");
    auto* tseed_opt = trace->add_option("--seed", seed, "Tie-breaking seed");
    trace->add_option("-o,--out", out, "Output path");

    auto* gen = app.add_subcommand("gen", "Generate instances from Partition or orientation problems");
    gen->require_subcommand(1);
    std::vector<std::uint64_t> values;
    auto* partition = gen->add_subcommand("partition", "Partition instance as a weighted program");
    partition->add_option("--values", values, "The multiset")->required();
    partition->add_option("-o,--out", out, "Program path (metadata goes to <out>.meta.json)");
    partition->add_option("--meta", meta_path, "Metadata path");
    std::string graph_path;
    std::uint64_t bound = 0;
    bool weighted = false;
    auto* mmo = gen->add_subcommand("mmo", "Minimum maximum outdegree instance");
    mmo->add_option("--graph", graph_path, "Edge list 'u v w'")->required()->check(CLI::ExistingFile);
    mmo->add_option("--bound", bound, "Outdegree bound r")->required();
    mmo->add_flag("--weighted", weighted, "Emit the weighted program instead of its cardinality form");
    mmo->add_option("-o,--out", out, "Program path (metadata goes to <out>.meta.json, a decomposition to <out>.td)");
    mmo->add_option("--meta", meta_path, "Metadata path");

    CLI11_PARSE(app, argc, argv);

    auto seed_of = [&](CLI::Option* o) { return o->count() ? std::optional<std::uint64_t>(seed) : std::nullopt; };

    try {
        if (*solve) {
            app::SolveRequest req;
            req.mode = *app::parse_mode(mode_name);
            if (!query.empty()) req.query = query;
            req.td = td;
            req.oracle = oracle;
            req.seed = seed_of(seed_opt);
            if (!trace_out.empty()) req.trace_out = trace_out;
            req.allow_large_weights = allow_large;
            auto report = app::run(load(input), req);
            std::cout << report.text();
            return report.exit_code;
        }
        if (*decompose) {
            auto prepared = app::prepare(load(input), false);
            auto tdec = app::decompose(prepared, td, seed_of(dseed_opt));
            decomp::IncidenceGraph ig(prepared.pcc);
            auto nd = decomp::normalize(tdec);
            std::ostringstream text;
            text << "c width " << tdec.width() << " nice-width " << nd.width() << " nice-nodes " << nd.nodes.size()
                 << '\n'
                 << decomp::write_pace(tdec, ig, prepared.pcc);
            emit(text.str(), out);
            return 0;
        }
        if (*trace) {
            auto prepared = app::prepare(load(input), false);
            auto nd = decomp::normalize(app::decompose(prepared, td, seed_of(tseed_opt)));
            dp::SolverOptions options;
            options.saturate = false;
            options.prune = false;
            options.keep_tables = true;
            dp::DpSolver solver(prepared.pcc, nd, options);
            solver.run();
            std::ostringstream text;
            dp::write_trace(solver, text);
            emit(text.str(), out);
            return solver.consistent() ? 0 : 1;
        }
        if (*partition) {
            Program p = transforms::partition_to_pwc(values);
            json meta = {{"source", "partition"}, {"values", values}};
            meta["ground_truth"] = transforms::partition_has_solution(values) ? "consistent" : "inconsistent";
            meta["checker"] = "subset-sum";
            if (values.size() <= 20) {
                if (auto half = transforms::partition_find_subset(values)) {
                    std::vector<std::string> atoms;
                    for (auto i : *half) atoms.push_back(p.atom_name(AtomId{static_cast<std::uint32_t>(i)}));
                    meta["witness"] = atoms;
                }
            }
            meta["hint"] = "incidence graph is a star around c; width 1 before the unary transform";
            emit(io::print_program(p), out);
            emit_meta(meta, out, meta_path);
            return 0;
        }
        if (*mmo) {
            std::ifstream gf(graph_path);
            auto inst = transforms::read_mmo_graph(gf, bound);
            Program weighted_program = transforms::mmo_to_pwc(inst);
            auto unary = transforms::unary_pwc_to_pcc(weighted_program);
            const Program& p = weighted ? weighted_program : unary.program;

            json meta = {{"source", "mmo"}, {"bound", bound}, {"vertex_order", inst.vertices}};
            json edges = json::array();
            for (const auto& e : inst.edges) {
                edges.push_back({{"u", inst.vertices[e.u]}, {"v", inst.vertices[e.v]}, {"weight", e.weight}});
            }
            meta["edges"] = edges;
            meta["checker"] = "orientation brute force";
            if (inst.edges.size() <= 20) {
                auto orientation = transforms::mmo_find_orientation(inst);
                meta["ground_truth"] = orientation ? "consistent" : "inconsistent";
                if (orientation) {
                    std::vector<std::string> atoms;
                    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
                        if ((*orientation >> i) & 1) atoms.push_back(weighted_program.atom_name(AtomId{static_cast<std::uint32_t>(i)}));
                    }
                    meta["witness"] = atoms;
                }
            }
            auto graph_td = decomp::heuristic_decompose(transforms::mmo_graph(inst), decomp::Heuristic::kMinFill);
            auto program_td = transforms::mmo_td_extension(inst, graph_td);
            if (!weighted) program_td = transforms::extend_td_for_unary(program_td, weighted_program, unary);
            meta["graph_width"] = graph_td.width();
            meta["program_width"] = program_td.width();

            emit(io::print_program(p), out);
            if (!out.empty() && out != "-") {
                meta["decomposition"] = out + ".td";
                emit(decomp::write_pace(program_td, decomp::IncidenceGraph(p), p), out + ".td");
            }
            emit_meta(meta, out, meta_path);
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
