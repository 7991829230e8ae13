#include "wcdp/transforms/reductions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "wcdp/core/errors.hpp"

namespace wcdp::transforms {

Program partition_to_pwc(const std::vector<std::uint64_t>& values) {
    std::uint64_t total = std::accumulate(values.begin(), values.end(), std::uint64_t{0});
    if (total % 2 != 0) throw RejectionError("odd total " + std::to_string(total) + ": not a Partition yes-instance");
    ProgramBuilder b;
    std::vector<WeightLiteral> clause;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == 0 || values[i] > 0xffffffffu) throw RejectionError("partition values must be in [1, 2^32)");
        AtomId a = b.add_atom("a" + std::to_string(i + 1));
        clause.push_back({a, Polarity::kPositive, static_cast<std::uint32_t>(values[i])});
    }
    ConstraintId c = b.add_constraint("c", std::move(clause), total / 2, total / 2);
    b.add_rule("r", c);
    return std::move(b).build();
}

bool partition_has_solution(const std::vector<std::uint64_t>& values) {
    std::uint64_t total = std::accumulate(values.begin(), values.end(), std::uint64_t{0});
    if (total % 2 != 0) return false;
    const std::uint64_t half = total / 2;
    std::vector<bool> reachable(half + 1, false);
    reachable[0] = true;
    for (auto x : values) {
        if (x > half) continue;
        for (std::uint64_t s = half; s >= x; --s) {
            if (reachable[s - x]) reachable[s] = true;
            if (s == x) break;
        }
    }
    return reachable[half];
}

std::optional<std::vector<std::size_t>> partition_find_subset(const std::vector<std::uint64_t>& values) {
    if (values.size() > 30) throw CapacityError("subset brute force limited to 30 values");
    std::uint64_t total = std::accumulate(values.begin(), values.end(), std::uint64_t{0});
    if (total % 2 != 0) return std::nullopt;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << values.size()); ++mask) {
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if ((mask >> i) & 1) sum += values[i];
        }
        if (2 * sum != total) continue;
        std::vector<std::size_t> picked;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if ((mask >> i) & 1) picked.push_back(i);
        }
        return picked;
    }
    return std::nullopt;
}

MmoInstance make_mmo(const std::vector<std::int64_t>& isolated,
                     const std::vector<std::tuple<std::int64_t, std::int64_t, std::uint32_t>>& edges,
                     std::uint64_t bound) {
    std::set<std::int64_t> ids(isolated.begin(), isolated.end());
    for (const auto& [u, v, w] : edges) {
        ids.insert(u);
        ids.insert(v);
    }
    MmoInstance inst;
    inst.vertices.assign(ids.begin(), ids.end());
    inst.bound = bound;
    auto index = [&](std::int64_t id) {
        return static_cast<std::uint32_t>(std::lower_bound(inst.vertices.begin(), inst.vertices.end(), id) -
                                          inst.vertices.begin());
    };
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const auto& [u, v, w] : edges) {
        if (u == v) throw RejectionError("loop at vertex " + std::to_string(u));
        if (w == 0) throw RejectionError("edge weights must be positive");
        auto a = index(u);
        auto b = index(v);
        if (a > b) std::swap(a, b);
        if (!seen.emplace(a, b).second) {
            throw RejectionError("repeated edge " + std::to_string(u) + "-" + std::to_string(v));
        }
        inst.edges.push_back({a, b, w});
    }
    return inst;
}

MmoInstance read_mmo_graph(std::istream& in, std::uint64_t bound) {
    std::vector<std::int64_t> isolated;
    std::vector<std::tuple<std::int64_t, std::int64_t, std::uint32_t>> edges;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        try {
            if (tok[0] == "v" && tok.size() == 2) {
                isolated.push_back(std::stoll(tok[1]));
            } else if (tok.size() == 3) {
                auto w = std::stoull(tok[2]);
                if (w > 0xffffffffu) throw std::out_of_range("weight");
                edges.emplace_back(std::stoll(tok[0]), std::stoll(tok[1]), static_cast<std::uint32_t>(w));
            } else {
                throw std::invalid_argument("shape");
            }
        } catch (const std::logic_error&) {
            throw ParseError(line_no, 1, "expected 'u v w' or 'v <id>'");
        }
    }
    return make_mmo(isolated, edges, bound);
}

namespace {

std::string vertex_name(const MmoInstance& inst, std::uint32_t i) {
    auto id = inst.vertices[i];
    return id < 0 ? "m" + std::to_string(-id) : std::to_string(id);
}

}  // namespace

Program mmo_to_pwc(const MmoInstance& inst) {
    for (const auto& e : inst.edges) {
        // r = 0 is let through: every edge then overloads one endpoint and the program is inconsistent.
        if (inst.bound > 0 && e.weight > inst.bound) {
            throw RejectionError("edge " + vertex_name(inst, e.u) + "-" + vertex_name(inst, e.v) + " has weight " +
                                 std::to_string(e.weight) + " > bound " + std::to_string(inst.bound));
        }
    }
    ProgramBuilder b;
    std::vector<std::vector<WeightLiteral>> clause(inst.vertices.size());
    for (const auto& e : inst.edges) {
        AtomId a = b.add_atom("a_" + vertex_name(inst, e.u) + "_" + vertex_name(inst, e.v));
        clause[e.u].push_back({a, Polarity::kPositive, e.weight});  // u -> v leaves u
        clause[e.v].push_back({a, Polarity::kNegative, e.weight});  // v -> u leaves v
    }
    std::vector<ConstraintId> cs;
    for (std::uint32_t v = 0; v < inst.vertices.size(); ++v) {
        cs.push_back(b.add_constraint("c_" + vertex_name(inst, v), clause[v], 0, inst.bound));
    }
    for (std::uint32_t v = 0; v < inst.vertices.size(); ++v) b.add_rule("r_" + vertex_name(inst, v), cs[v]);
    return std::move(b).build();
}

UnaryTransform mmo_to_pcc(const MmoInstance& inst) { return unary_pwc_to_pcc(mmo_to_pwc(inst)); }

decomp::Graph mmo_graph(const MmoInstance& inst) {
    decomp::Graph g(inst.vertices.size());
    for (const auto& e : inst.edges) g.add_edge(e.u, e.v);
    return g;
}

decomp::TreeDecomposition mmo_td_extension(const MmoInstance& inst, const decomp::TreeDecomposition& graph_td) {
    using decomp::Bag;
    using decomp::Vertex;
    const auto atoms = static_cast<Vertex>(inst.edges.size());
    const auto n = static_cast<Vertex>(inst.vertices.size());
    auto con = [&](Vertex v) { return atoms + v; };
    auto rule = [&](Vertex v) { return atoms + n + v; };

    decomp::TreeDecomposition out;
    out.root = graph_td.root;
    out.edges = graph_td.edges;
    for (const auto& bag : graph_td.bags) {
        Bag mapped;
        for (auto v : bag) mapped.push_back(con(v));
        out.bags.push_back(std::move(mapped));  // order preserved: con() is monotone
    }
    const auto original = static_cast<std::uint32_t>(out.bags.size());
    auto find_node = [&](std::initializer_list<Vertex> need) -> std::uint32_t {
        for (std::uint32_t i = 0; i < original; ++i) {
            const auto& bag = graph_td.bags[i];
            if (std::all_of(need.begin(), need.end(),
                            [&](Vertex v) { return std::binary_search(bag.begin(), bag.end(), v); })) {
                return i;
            }
        }
        throw std::invalid_argument("graph decomposition does not cover the graph");
    };
    auto attach = [&](Bag bag, std::uint32_t to) {
        std::sort(bag.begin(), bag.end());
        out.bags.push_back(std::move(bag));
        out.edges.emplace_back(to, static_cast<std::uint32_t>(out.bags.size() - 1));
    };
    for (Vertex i = 0; i < inst.edges.size(); ++i) {
        const auto& e = inst.edges[i];
        attach({con(e.u), con(e.v), i}, find_node({e.u, e.v}));
    }
    for (Vertex v = 0; v < n; ++v) attach({con(v), rule(v)}, find_node({v}));
    return out;
}

bool mmo_has_orientation(const MmoInstance& inst) { return mmo_find_orientation(inst).has_value(); }

std::optional<std::uint64_t> mmo_find_orientation(const MmoInstance& inst) {
    const std::size_t m = inst.edges.size();
    if (m > 30) throw CapacityError("orientation brute force limited to 30 edges");
    std::vector<std::uint64_t> out(inst.vertices.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::fill(out.begin(), out.end(), 0);
        for (std::size_t i = 0; i < m; ++i) {
            const auto& e = inst.edges[i];
            out[(mask >> i) & 1 ? e.u : e.v] += e.weight;
        }
        if (std::all_of(out.begin(), out.end(), [&](std::uint64_t d) { return d <= inst.bound; })) return mask;
    }
    return std::nullopt;
}

}  // namespace wcdp::transforms
