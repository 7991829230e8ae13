#include "wcdp/decomp/nice_decomposition.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace wcdp::decomp {

int NiceDecomposition::width() const {
    std::size_t largest = 0;
    for (const auto& n : nodes) largest = std::max(largest, n.bag.size());
    return static_cast<int>(largest) - 1;
}

TreeDecomposition NiceDecomposition::underlying() const {
    TreeDecomposition td;
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
        td.bags.push_back(nodes[i].bag);
        td.labels.push_back(nodes[i].label);
        for (auto c : nodes[i].children) td.edges.emplace_back(c, i);
    }
    td.root = root;
    return td;
}

std::optional<std::uint32_t> NiceDecomposition::find_label(const std::string& label) const {
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].label == label) return i;
    }
    return std::nullopt;
}

namespace {

class Normalizer {
public:
    explicit Normalizer(NiceDecomposition& out) : out_(out) {}

    std::uint32_t leaf() {
        NiceNode n;
        n.shape = NiceShape::kLeaf;
        return push(std::move(n));
    }

    /// Extends the chain at `from` until its bag equals `target`.
    std::uint32_t chain(std::uint32_t from, const Bag& target) {
        Bag current = out_.nodes[from].bag;
        Bag gone;
        Bag fresh;
        std::set_difference(current.begin(), current.end(), target.begin(), target.end(), std::back_inserter(gone));
        std::set_difference(target.begin(), target.end(), current.begin(), current.end(), std::back_inserter(fresh));
        std::uint32_t top = from;
        for (auto v : gone) {
            current.erase(std::lower_bound(current.begin(), current.end(), v));
            top = step(top, NiceShape::kRemove, v, current);
        }
        for (auto v : fresh) {
            current.insert(std::lower_bound(current.begin(), current.end(), v), v);
            top = step(top, NiceShape::kIntroduce, v, current);
        }
        return top;
    }

    std::uint32_t branch(std::uint32_t left, std::uint32_t right) {
        NiceNode n;
        n.shape = NiceShape::kBranch;
        n.bag = out_.nodes[left].bag;
        n.children = {left, right};
        return push(std::move(n));
    }

private:
    std::uint32_t step(std::uint32_t child, NiceShape shape, Vertex v, const Bag& bag) {
        NiceNode n;
        n.shape = shape;
        n.vertex = v;
        n.bag = bag;
        n.children = {child};
        return push(std::move(n));
    }

    std::uint32_t push(NiceNode n) {
        out_.nodes.push_back(std::move(n));
        return static_cast<std::uint32_t>(out_.nodes.size() - 1);
    }

    NiceDecomposition& out_;
};

}  // namespace

NiceDecomposition normalize(const TreeDecomposition& td, std::optional<std::uint32_t> root) {
    const std::size_t n = td.node_count();
    if (n == 0) throw std::invalid_argument("cannot normalize an empty decomposition");
    std::uint32_t r = root.value_or(td.root.value_or(0));
    if (r >= n) throw std::invalid_argument("root node out of range");
    auto adj = td.adjacency();

    // Iterative post-order of the rooted tree.
    std::vector<std::int64_t> parent(n, -1);
    std::vector<std::uint32_t> preorder;
    preorder.reserve(n);
    std::vector<std::uint32_t> stack{r};
    std::vector<bool> seen(n, false);
    seen[r] = true;
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        preorder.push_back(x);
        // Push in reverse so that lower-numbered children are expanded first.
        for (auto it = adj[x].rbegin(); it != adj[x].rend(); ++it) {
            if (!seen[*it]) {
                seen[*it] = true;
                parent[*it] = x;
                stack.push_back(*it);
            }
        }
    }
    if (preorder.size() != n) throw std::invalid_argument("decomposition is not connected");
    std::vector<std::vector<std::uint32_t>> children(n);
    for (auto x : preorder) {
        if (parent[x] >= 0) children[static_cast<std::size_t>(parent[x])].push_back(x);
    }
    for (auto& c : children) std::sort(c.begin(), c.end());

    NiceDecomposition nd;
    Normalizer build(nd);
    std::vector<std::uint32_t> top(n, 0);
    for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
        auto t = *it;
        const Bag& bag = td.bags[t];
        std::vector<std::uint32_t> tops;
        if (children[t].empty()) {
            tops.push_back(build.chain(build.leaf(), bag));
        } else {
            for (auto c : children[t]) tops.push_back(build.chain(top[c], bag));
        }
        std::uint32_t here = tops.front();
        for (std::size_t i = 1; i < tops.size(); ++i) here = build.branch(here, tops[i]);
        top[t] = here;
        if (t < td.labels.size() && !td.labels[t].empty() && nd.nodes[here].label.empty()) {
            nd.nodes[here].label = td.labels[t];
        }
    }
    nd.root = build.chain(top[r], {});
    for (std::uint32_t i = 0; i < nd.nodes.size(); ++i) {
        if (nd.nodes[i].label.empty()) nd.nodes[i].label = "#" + std::to_string(i + 1);
    }
    return nd;
}

std::optional<std::string> nice_violation(const NiceDecomposition& nd) {
    if (nd.nodes.empty()) return "no nodes";
    if (nd.root >= nd.nodes.size()) return "root out of range";
    if (!nd.nodes[nd.root].bag.empty()) return "root bag is not empty";
    std::vector<int> parents(nd.nodes.size(), 0);
    for (std::uint32_t i = 0; i < nd.nodes.size(); ++i) {
        const auto& node = nd.nodes[i];
        const std::string where = "node " + node.label + ": ";
        for (auto c : node.children) {
            if (c >= i) return where + "child does not precede its parent";
            ++parents[c];
        }
        switch (node.shape) {
            case NiceShape::kLeaf:
                if (!node.children.empty()) return where + "leaf with children";
                if (!node.bag.empty()) return where + "leaf bag is not empty";
                break;
            case NiceShape::kBranch:
                if (node.children.size() != 2) return where + "branch without two children";
                for (auto c : node.children) {
                    if (nd.nodes[c].bag != node.bag) return where + "branch bag differs from a child bag";
                }
                break;
            case NiceShape::kIntroduce:
            case NiceShape::kRemove: {
                if (node.children.size() != 1 || !node.vertex) return where + "malformed chain node";
                Bag expected = nd.nodes[node.children[0]].bag;
                auto pos = std::lower_bound(expected.begin(), expected.end(), *node.vertex);
                bool present = pos != expected.end() && *pos == *node.vertex;
                if (node.shape == NiceShape::kIntroduce) {
                    if (present) return where + "introduced vertex already in child bag";
                    expected.insert(pos, *node.vertex);
                } else {
                    if (!present) return where + "removed vertex missing from child bag";
                    expected.erase(pos);
                }
                if (expected != node.bag) return where + "bag differs from child by more than one vertex";
                break;
            }
        }
    }
    for (std::uint32_t i = 0; i < nd.nodes.size(); ++i) {
        if (i == nd.root ? parents[i] != 0 : parents[i] != 1) return "nodes do not form a rooted tree";
    }
    return std::nullopt;
}

NodeKind classify(const NiceNode& node, const IncidenceGraph& ig) {
    switch (node.shape) {
        case NiceShape::kLeaf: return NodeKind::kL;
        case NiceShape::kBranch: return NodeKind::kB;
        case NiceShape::kIntroduce:
        case NiceShape::kRemove: {
            bool intro = node.shape == NiceShape::kIntroduce;
            switch (ig.element(*node.vertex).kind()) {
                case ElementKind::kAtom: return intro ? NodeKind::kAI : NodeKind::kAR;
                case ElementKind::kConstraint: return intro ? NodeKind::kCI : NodeKind::kCR;
                case ElementKind::kRule: return intro ? NodeKind::kRI : NodeKind::kRR;
            }
        }
    }
    throw std::logic_error("unclassifiable node");
}

std::string node_kind_name(NodeKind kind) {
    switch (kind) {
        case NodeKind::kL: return "L";
        case NodeKind::kB: return "B";
        case NodeKind::kAI: return "AI";
        case NodeKind::kAR: return "AR";
        case NodeKind::kRI: return "RI";
        case NodeKind::kRR: return "RR";
        case NodeKind::kCI: return "CI";
        case NodeKind::kCR: return "CR";
    }
    return "?";
}

}  // namespace wcdp::decomp
