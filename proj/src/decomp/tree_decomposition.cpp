#include "wcdp/decomp/tree_decomposition.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace wcdp::decomp {

int TreeDecomposition::width() const {
    std::size_t largest = 0;
    for (const auto& b : bags) largest = std::max(largest, b.size());
    return static_cast<int>(largest) - 1;
}

std::vector<std::vector<std::uint32_t>> TreeDecomposition::adjacency() const {
    std::vector<std::vector<std::uint32_t>> adj(bags.size());
    for (auto [a, b] : edges) {
        adj.at(a).push_back(b);
        adj.at(b).push_back(a);
    }
    return adj;
}

std::optional<std::string> td_violation(const Graph& g, const TreeDecomposition& td) {
    const std::size_t n = td.node_count();
    if (n == 0) return "decomposition has no nodes";
    if (td.edges.size() != n - 1) return "decomposition is not a tree (edge count)";
    for (auto [a, b] : td.edges) {
        if (a >= n || b >= n || a == b) return "decomposition edge refers to an invalid node";
    }
    for (const auto& bag : td.bags) {
        if (!std::is_sorted(bag.begin(), bag.end()) || std::adjacent_find(bag.begin(), bag.end()) != bag.end()) {
            return "bag is not a sorted set";
        }
        for (auto v : bag) {
            if (v >= g.vertex_count()) return "bag contains an unknown vertex";
        }
    }
    auto adj = td.adjacency();
    {
        std::vector<bool> seen(n, false);
        std::vector<std::uint32_t> stack{0};
        seen[0] = true;
        std::size_t reached = 1;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (auto y : adj[x]) {
                if (!seen[y]) {
                    seen[y] = true;
                    ++reached;
                    stack.push_back(y);
                }
            }
        }
        if (reached != n) return "decomposition is not a tree (disconnected)";
    }

    std::vector<std::vector<std::uint32_t>> occurrences(g.vertex_count());
    for (std::uint32_t node = 0; node < n; ++node) {
        for (auto v : td.bags[node]) occurrences[v].push_back(node);
    }
    // (1) vertex coverage
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (occurrences[v].empty()) return "condition (1): vertex " + std::to_string(v) + " occurs in no bag";
    }
    // (2) edge coverage
    for (auto [u, v] : g.edges()) {
        bool covered = std::any_of(occurrences[u].begin(), occurrences[u].end(), [&](std::uint32_t node) {
            return std::binary_search(td.bags[node].begin(), td.bags[node].end(), v);
        });
        if (!covered) {
            return "condition (2): edge " + std::to_string(u) + "-" + std::to_string(v) + " is not covered";
        }
    }
    // (3) the nodes holding a vertex induce a connected subtree
    std::vector<char> holds(n, 0);
    std::vector<char> seen(n, 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const auto& occ = occurrences[v];
        for (auto node : occ) holds[node] = 1;
        std::vector<std::uint32_t> stack{occ.front()};
        seen[occ.front()] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (auto y : adj[x]) {
                if (holds[y] && !seen[y]) {
                    seen[y] = 1;
                    ++reached;
                    stack.push_back(y);
                }
            }
        }
        for (auto node : occ) holds[node] = seen[node] = 0;
        if (reached != occ.size()) {
            return "condition (3): bags holding vertex " + std::to_string(v) + " are not connected";
        }
    }
    return std::nullopt;
}

bool validate_td(const Graph& g, const TreeDecomposition& td) { return !td_violation(g, td).has_value(); }

std::optional<Heuristic> parse_heuristic(const std::string& name) {
    if (name == "min-fill") return Heuristic::kMinFill;
    if (name == "min-degree") return Heuristic::kMinDegree;
    return std::nullopt;
}

std::string heuristic_name(Heuristic h) { return h == Heuristic::kMinFill ? "min-fill" : "min-degree"; }

namespace {

class EliminationGraph {
public:
    explicit EliminationGraph(const Graph& g)
        : n_(g.vertex_count()), matrix_(n_ * n_, false), neighbors_(n_), alive_(n_, true) {
        for (auto [u, v] : g.edges()) connect(u, v);
    }

    void connect(Vertex u, Vertex v) {
        if (u == v || matrix_[u * n_ + v]) return;
        matrix_[u * n_ + v] = matrix_[v * n_ + u] = true;
        neighbors_[u].push_back(v);
        neighbors_[v].push_back(u);
    }

    const std::vector<Vertex>& neighbors(Vertex v) const { return neighbors_[v]; }

    std::size_t fill(Vertex v) const {
        const auto& nb = neighbors_[v];
        std::size_t missing = 0;
        for (std::size_t i = 0; i < nb.size(); ++i) {
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                if (!matrix_[nb[i] * n_ + nb[j]]) ++missing;
            }
        }
        return missing;
    }

    /// Removes v after turning its neighborhood into a clique; returns that neighborhood.
    std::vector<Vertex> eliminate(Vertex v) {
        std::vector<Vertex> nb = neighbors_[v];
        for (std::size_t i = 0; i < nb.size(); ++i) {
            for (std::size_t j = i + 1; j < nb.size(); ++j) connect(nb[i], nb[j]);
        }
        for (auto u : nb) {
            auto& list = neighbors_[u];
            list.erase(std::find(list.begin(), list.end(), v));
            matrix_[u * n_ + v] = matrix_[v * n_ + u] = false;
        }
        neighbors_[v].clear();
        alive_[v] = false;
        return nb;
    }

    bool alive(Vertex v) const { return alive_[v]; }

private:
    std::size_t n_;
    std::vector<bool> matrix_;
    std::vector<std::vector<Vertex>> neighbors_;
    std::vector<bool> alive_;
};

}  // namespace

TreeDecomposition heuristic_decompose(const Graph& g, Heuristic heuristic, std::optional<std::uint64_t> seed) {
    const std::size_t n = g.vertex_count();
    EliminationGraph eg(g);
    std::optional<std::mt19937_64> rng;
    if (seed) rng.emplace(*seed);

    constexpr std::size_t kStale = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> score(n, kStale);
    auto score_of = [&](Vertex v) {
        if (score[v] == kStale) score[v] = heuristic == Heuristic::kMinFill ? eg.fill(v) : eg.neighbors(v).size();
        return score[v];
    };

    std::vector<Vertex> ordering;
    ordering.reserve(n);
    std::vector<Vertex> ties;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = kStale;
        ties.clear();
        for (Vertex v = 0; v < n; ++v) {
            if (!eg.alive(v)) continue;
            auto s = score_of(v);
            if (s < best) {
                best = s;
                ties.assign(1, v);
            } else if (s == best) {
                ties.push_back(v);
            }
        }
        Vertex chosen = ties.front();
        if (rng) chosen = ties[std::uniform_int_distribution<std::size_t>(0, ties.size() - 1)(*rng)];
        ordering.push_back(chosen);
        auto nb = eg.eliminate(chosen);
        // Fill and degree can only change within distance two of the eliminated vertex.
        for (auto u : nb) {
            score[u] = kStale;
            if (heuristic == Heuristic::kMinFill) {
                for (auto w : eg.neighbors(u)) score[w] = kStale;
            }
        }
    }
    return decomposition_from_ordering(g, ordering);
}

TreeDecomposition decomposition_from_ordering(const Graph& g, const std::vector<Vertex>& ordering) {
    const std::size_t n = g.vertex_count();
    if (ordering.size() != n) throw std::invalid_argument("elimination ordering must cover every vertex");
    std::vector<std::size_t> position(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (ordering[i] >= n || position[ordering[i]] != n) throw std::invalid_argument("ordering is not a permutation");
        position[ordering[i]] = i;
    }

    TreeDecomposition td;
    if (n == 0) {
        td.bags.emplace_back();
        return td;
    }

    // Simulate elimination, recording each vertex's higher neighbors.
    std::vector<std::vector<Vertex>> later(n);
    {
        std::vector<std::vector<Vertex>> adj(n);
        for (Vertex v = 0; v < n; ++v) adj[v] = g.neighbors(v);
        for (auto v : ordering) {
            std::vector<Vertex> nb;
            for (auto u : adj[v]) {
                if (position[u] > position[v]) nb.push_back(u);
            }
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
            for (std::size_t i = 0; i < nb.size(); ++i) {
                for (std::size_t j = 0; j < nb.size(); ++j) {
                    if (i != j) adj[nb[i]].push_back(nb[j]);
                }
            }
            later[v] = std::move(nb);
        }
    }

    // Bag i belongs to ordering[i]; its parent is the bag of the earliest later neighbor.
    std::vector<Bag> bags(n);
    std::vector<std::optional<std::size_t>> parent(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vertex v = ordering[i];
        Bag bag = later[v];
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        bags[i] = std::move(bag);
        if (!later[v].empty()) {
            std::size_t p = n;
            for (auto u : later[v]) p = std::min(p, position[u]);
            parent[i] = p;
        }
    }
    // Link the component roots into one tree.
    std::optional<std::size_t> previous_root;
    for (std::size_t i = 0; i < n; ++i) {
        if (parent[i]) continue;
        if (previous_root) parent[*previous_root] = i;
        previous_root = i;
    }

    // Contract bags contained in their parent.
    std::vector<std::size_t> target(n);
    std::iota(target.begin(), target.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (parent[i] && std::includes(bags[*parent[i]].begin(), bags[*parent[i]].end(), bags[i].begin(), bags[i].end())) {
            target[i] = *parent[i];
        }
    }
    // parent index is always greater, so resolve from the top down.
    for (std::size_t k = n; k-- > 0;) {
        if (target[k] != k) target[k] = target[target[k]];
    }
    std::vector<std::uint32_t> node_of(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (target[i] == i) {
            node_of[i] = static_cast<std::uint32_t>(td.bags.size());
            td.bags.push_back(bags[i]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (target[i] != i || !parent[i]) continue;
        td.edges.emplace_back(node_of[i], node_of[target[*parent[i]]]);
    }
    return td;
}

}  // namespace wcdp::decomp
