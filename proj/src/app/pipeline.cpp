#include "wcdp/app/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "wcdp/core/errors.hpp"
#include "wcdp/core/semantics.hpp"
#include "wcdp/decomp/incidence_graph.hpp"
#include "wcdp/decomp/td_format.hpp"
#include "wcdp/dp/solver.hpp"
#include "wcdp/dp/trace.hpp"

namespace wcdp::app {

std::optional<Mode> parse_mode(const std::string& name) {
    if (name == "consistency") return Mode::kConsistency;
    if (name == "credulous") return Mode::kCredulous;
    if (name == "skeptical") return Mode::kSkeptical;
    if (name == "enumerate") return Mode::kEnumerate;
    if (name == "witness") return Mode::kWitness;
    return std::nullopt;
}

std::uint64_t structural_size(const Program& p) {
    std::uint64_t size = p.atom_count() + p.constraint_count() + p.rule_count();
    for (const auto& c : p.constraints()) size += c.clause.size();
    for (const auto& r : p.rules()) size += r.body.size();
    return size;
}

Prepared prepare(const Program& input, bool allow_large_weights) {
    Prepared out{input, input, std::nullopt, input, std::nullopt, false};
    if (!input.is_pcc()) {
        Program clamped = transforms::clamp_weights(input);
        const auto heaviest = transforms::max_weight(clamped);
        const auto size = structural_size(clamped);
        if (heaviest > size) {
            if (!allow_large_weights) {
                throw RejectionError("weight " + std::to_string(heaviest) + " exceeds the program size " +
                                     std::to_string(size) +
                                     "; weights are read as unary (use --allow-large-weights for oracle-only solving)");
            }
            out.oracle_only = true;
            return out;
        }
        if (clamped.is_pcc()) {
            out.unsplit = std::move(clamped);
        } else {
            out.unary = transforms::unary_pwc_to_pcc(clamped);
            out.unsplit = out.unary->program;
        }
    }
    auto split = dp::split_roles(out.unsplit);
    if (split.copies.empty()) {
        out.pcc = out.unsplit;
    } else {
        out.pcc = split.program;
        out.split = std::move(split);
    }
    return out;
}

decomp::TreeDecomposition decompose(const Prepared& prepared, const std::string& td_choice,
                                    std::optional<std::uint64_t> seed) {
    const std::string prefix = "import:";
    if (td_choice.rfind(prefix, 0) == 0) {
        const std::string path = td_choice.substr(prefix.size());
        decomp::IncidenceGraph ig(prepared.original);
        auto td = decomp::read_pace_file(path, ig.vertex_count());
        if (auto why = decomp::td_violation(ig.graph(), td)) throw std::invalid_argument("imported decomposition: " + *why);
        if (prepared.unary) td = transforms::extend_td_for_unary(td, prepared.original, *prepared.unary);
        if (prepared.split) td = dp::extend_td_for_split(td, prepared.unsplit, *prepared.split);
        return td;
    }
    auto h = decomp::parse_heuristic(td_choice);
    if (!h) throw std::invalid_argument("unknown decomposition '" + td_choice + "'");
    decomp::IncidenceGraph ig(prepared.pcc);
    return decomp::heuristic_decompose(ig.graph(), *h, seed);
}

std::string Report::text() const {
    std::ostringstream out;
    out << verdict << '\n';
    if (witness) out << "witness: " << *witness << '\n';
    for (const auto& line : extra) out << line << '\n';
    out << "stats: width=" << width << " nodes=" << nodes << " table_max=" << table_max << " time_ms=" << time_ms
        << '\n';
    return out.str();
}

namespace {

Interpretation restrict(const Interpretation& i, std::size_t universe) {
    Interpretation out(universe);
    for (auto a : i.members()) {
        if (a.value < universe) out.insert(a);
    }
    return out;
}

struct Verdict {
    bool yes = false;
    std::optional<Interpretation> witness;
};

Verdict oracle_verdict(const Program& p, Mode mode, std::optional<AtomId> query,
                       const std::vector<Interpretation>& answer_sets) {
    Verdict v;
    switch (mode) {
        case Mode::kConsistency:
        case Mode::kEnumerate:
        case Mode::kWitness:
            v.yes = !answer_sets.empty();
            if (v.yes) v.witness = answer_sets.front();
            break;
        case Mode::kCredulous:
            v.yes = std::any_of(answer_sets.begin(), answer_sets.end(),
                                [&](const Interpretation& i) { return i.contains(*query); });
            break;
        case Mode::kSkeptical:
            v.yes = std::all_of(answer_sets.begin(), answer_sets.end(),
                                [&](const Interpretation& i) { return i.contains(*query); });
            break;
    }
    (void)p;
    return v;
}

std::string verdict_text(Mode mode, bool yes) {
    if (mode == Mode::kCredulous || mode == Mode::kSkeptical) return yes ? "YES" : "NO";
    return yes ? "CONSISTENT" : "INCONSISTENT";
}

}  // namespace

Report run(const Program& input, const SolveRequest& request) {
    const auto start = std::chrono::steady_clock::now();
    const bool needs_query = request.mode == Mode::kCredulous || request.mode == Mode::kSkeptical;
    if (needs_query != request.query.has_value()) {
        throw std::invalid_argument(needs_query ? "--query is required for credulous and skeptical modes"
                                                : "--query is only meaningful for credulous and skeptical modes");
    }
    std::optional<AtomId> query;
    if (request.query) {
        query = input.find_atom(*request.query);
        if (!query) throw std::invalid_argument("unknown query atom '" + *request.query + "'");
    }

    Report report;
    Prepared prepared = prepare(input, request.allow_large_weights);
    const std::size_t original_atoms = input.atom_count();

    std::optional<std::vector<Interpretation>> answer_sets;
    auto oracle = [&]() -> const std::vector<Interpretation>& {
        if (!answer_sets) answer_sets = enumerate_answer_sets(input);
        return *answer_sets;
    };

    Verdict verdict;
    if (prepared.oracle_only) {
        verdict = oracle_verdict(input, request.mode, query, oracle());
        report.extra.push_back("note: large weights, answered by exhaustive enumeration only");
    } else {
        auto td = decompose(prepared, request.td, request.seed);
        auto nd = decomp::normalize(td);
        dp::SolverOptions options;
        options.query = query;
        if (request.trace_out) {
            // Traces list the exact, unpruned tables.
            options.keep_tables = true;
            options.prune = false;
            options.saturate = false;
        }
        dp::DpSolver solver(prepared.pcc, nd, options);
        solver.run();
        report.width = solver.stats().width;
        report.nodes = solver.stats().nodes;
        report.table_max = solver.stats().table_max;
        if (request.trace_out) {
            std::ofstream out(*request.trace_out);
            if (!out) throw std::runtime_error("cannot write trace to " + *request.trace_out);
            dp::write_trace(solver, out);
        }
        switch (request.mode) {
            case Mode::kCredulous: verdict.yes = solver.credulous(); break;
            case Mode::kSkeptical:
                verdict.yes = solver.skeptical();
                if (!solver.consistent()) report.extra.push_back("note: no answer sets, skeptical holds vacuously");
                break;
            default:
                verdict.yes = solver.consistent();
                if (verdict.yes) verdict.witness = restrict(*solver.witness(), original_atoms);
                break;
        }
    }

    report.verdict = verdict_text(request.mode, verdict.yes);
    if (request.mode == Mode::kWitness && verdict.witness) {
        report.witness = format_interpretation(input, *verdict.witness);
    }
    if (request.mode == Mode::kEnumerate) {
        // The DP decides consistency only; the listing comes from exhaustive enumeration.
        for (const auto& i : oracle()) report.extra.push_back("answer set: " + format_interpretation(input, i));
    }

    report.exit_code = verdict.yes ? 0 : 1;
    if (request.oracle && !prepared.oracle_only) {
        if (input.atom_count() > kDefaultExhaustiveLimit) {
            report.extra.push_back("oracle: skipped (" + std::to_string(input.atom_count()) + " atoms)");
        } else {
            auto expected = oracle_verdict(input, request.mode, query, oracle());
            bool agree = expected.yes == verdict.yes;
            if (agree && verdict.witness) agree = is_stable(*verdict.witness, input);
            report.extra.push_back(agree ? "oracle: agree" : "oracle: DISAGREE");
            if (!agree) report.exit_code = 2;
        }
    }
    report.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace wcdp::app
