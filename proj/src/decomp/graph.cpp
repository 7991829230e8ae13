#include "wcdp/decomp/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace wcdp::decomp {

void Graph::add_edge(Vertex u, Vertex v) {
    if (u >= adjacency_.size() || v >= adjacency_.size()) throw std::out_of_range("edge endpoint out of range");
    if (u == v || has_edge(u, v)) return;
    auto& au = adjacency_[u];
    au.insert(std::lower_bound(au.begin(), au.end(), v), v);
    auto& av = adjacency_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++edge_count_;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    const auto& au = adjacency_.at(u);
    return std::binary_search(au.begin(), au.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < adjacency_.size(); ++u) {
        for (Vertex v : adjacency_[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

}  // namespace wcdp::decomp
