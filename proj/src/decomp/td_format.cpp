#include "wcdp/decomp/td_format.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "wcdp/core/errors.hpp"

namespace wcdp::decomp {

namespace {

std::size_t parse_id(const std::string& token, std::size_t line, std::size_t limit, const char* what) {
    std::size_t value = 0;
    std::size_t used = 0;
    try {
        value = std::stoul(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size() || token.empty()) throw ParseError(line, 1, std::string("expected ") + what + ", got '" + token + "'");
    if (value < 1 || value > limit) throw ParseError(line, 1, std::string(what) + " " + token + " out of range");
    return value;
}

}  // namespace

TreeDecomposition read_pace(std::istream& in, std::optional<std::size_t> expected_vertices) {
    TreeDecomposition td;
    std::string raw;
    std::size_t line_no = 0;
    bool header = false;
    std::size_t bag_count = 0;
    std::size_t vertex_count = 0;
    std::vector<bool> defined;
    std::optional<std::uint32_t> root;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok[0] == "c") {
            if (tok.size() == 3 && tok[1] == "root") {
                if (!header) throw ParseError(line_no, 1, "root directive before header");
                root = static_cast<std::uint32_t>(parse_id(tok[2], line_no, bag_count, "bag id") - 1);
            }
            continue;
        }
        if (tok[0] == "s") {
            if (header) throw ParseError(line_no, 1, "duplicate header");
            if (tok.size() != 5 || tok[1] != "td") throw ParseError(line_no, 1, "malformed header");
            bag_count = std::stoul(tok[2]);
            vertex_count = std::stoul(tok[4]);
            td.bags.assign(bag_count, {});
            td.labels.resize(bag_count);
            for (std::size_t i = 0; i < bag_count; ++i) td.labels[i] = "n" + std::to_string(i + 1);
            defined.assign(bag_count, false);
            header = true;
            continue;
        }
        if (!header) throw ParseError(line_no, 1, "content before header");
        if (tok[0] == "b") {
            if (tok.size() < 2) throw ParseError(line_no, 1, "bag line without id");
            auto id = parse_id(tok[1], line_no, bag_count, "bag id") - 1;
            if (defined[id]) throw ParseError(line_no, 1, "bag " + tok[1] + " defined twice");
            defined[id] = true;
            Bag bag;
            for (std::size_t i = 2; i < tok.size(); ++i) {
                bag.push_back(static_cast<Vertex>(parse_id(tok[i], line_no, vertex_count, "vertex id") - 1));
            }
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            td.bags[id] = std::move(bag);
            continue;
        }
        if (tok.size() != 2) throw ParseError(line_no, 1, "expected an edge line");
        auto a = parse_id(tok[0], line_no, bag_count, "bag id") - 1;
        auto b = parse_id(tok[1], line_no, bag_count, "bag id") - 1;
        td.edges.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
    }
    if (!header) throw ParseError(line_no + 1, 1, "missing header");
    if (expected_vertices && *expected_vertices != vertex_count) {
        throw ParseError(1, 1, "decomposition has " + std::to_string(vertex_count) + " vertices, program has " +
                                   std::to_string(*expected_vertices));
    }
    td.root = root;
    return td;
}

TreeDecomposition read_pace_file(const std::string& path, std::optional<std::size_t> expected_vertices) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open decomposition file " + path);
    return read_pace(in, expected_vertices);
}

namespace {

void write_body(std::ostringstream& out, const TreeDecomposition& td) {
    if (td.root) out << "c root " << *td.root + 1 << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (auto v : td.bags[i]) out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [a, b] : td.edges) out << a + 1 << ' ' << b + 1 << '\n';
}

}  // namespace

std::string write_pace(const TreeDecomposition& td, std::size_t vertex_count) {
    std::ostringstream out;
    out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << vertex_count << '\n';
    write_body(out, td);
    return out.str();
}

std::string write_pace(const TreeDecomposition& td, const IncidenceGraph& ig, const Program& p) {
    std::ostringstream out;
    out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << ig.vertex_count() << '\n';
    for (Vertex v = 0; v < ig.vertex_count(); ++v) {
        Element e = ig.element(v);
        const char* kind = e.is_atom() ? "atom" : e.is_constraint() ? "constraint" : "rule";
        out << "c " << v + 1 << ' ' << kind << ' ' << p.element_name(e) << '\n';
    }
    write_body(out, td);
    return out.str();
}

}  // namespace wcdp::decomp
