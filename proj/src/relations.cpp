#include "ccit/relations.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ccit/rng.hpp"

namespace ccit {

CausalGraph::CausalGraph(std::vector<std::string> nodes,
                         std::vector<std::pair<std::string, std::string>> edges)
    : nodes_(std::move(nodes)) {
    std::set<std::string> seen;
    for (const auto& n : nodes_) {
        if (n.empty()) throw std::invalid_argument("CausalGraph: empty node name");
        if (!seen.insert(n).second)
            throw std::invalid_argument("CausalGraph: duplicate node '" + n + "'");
    }
    parents_.resize(nodes_.size());
    children_.resize(nodes_.size());
    std::set<std::pair<int, int>> edge_set;
    for (const auto& [p, c] : edges) {
        const int pi = index_of(p), ci = index_of(c);
        if (pi < 0) throw std::invalid_argument("CausalGraph: unknown node '" + p + "'");
        if (ci < 0) throw std::invalid_argument("CausalGraph: unknown node '" + c + "'");
        if (pi == ci) throw std::invalid_argument("CausalGraph: self-loop on '" + p + "'");
        if (!edge_set.insert({pi, ci}).second)
            throw std::invalid_argument("CausalGraph: duplicate edge " + p + " -> " + c);
        edges_.emplace_back(pi, ci);
        children_[pi].push_back(ci);
        parents_[ci].push_back(pi);
    }
    check_acyclic();
}

void CausalGraph::check_acyclic() const {
    // Kahn's algorithm; leftover nodes mean a directed cycle.
    std::vector<int> indeg(nodes_.size(), 0);
    for (const auto& [p, c] : edges_) ++indeg[c];
    std::vector<int> queue;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (indeg[i] == 0) queue.push_back(static_cast<int>(i));
    std::size_t removed = 0;
    while (!queue.empty()) {
        const int v = queue.back();
        queue.pop_back();
        ++removed;
        for (int c : children_[v])
            if (--indeg[c] == 0) queue.push_back(c);
    }
    if (removed != nodes_.size())
        throw std::invalid_argument("CausalGraph: graph contains a directed cycle");
}

int CausalGraph::index_of(const std::string& name) const {
    const auto it = std::find(nodes_.begin(), nodes_.end(), name);
    return it == nodes_.end() ? -1 : static_cast<int>(it - nodes_.begin());
}

CausalGraph CausalGraph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    auto note_node = [&](const std::string& n) {
        if (std::find(nodes.begin(), nodes.end(), n) == nodes.end()) nodes.push_back(n);
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string parent, arrow, child, extra;
        if (!(ls >> parent)) continue;  // blank line
        if (!(ls >> arrow >> child) || arrow != "->" || (ls >> extra)) {
            throw std::runtime_error("graph parse error at line " + std::to_string(lineno) +
                                     ": expected 'parent -> child'");
        }
        note_node(parent);
        note_node(child);
        edges.emplace_back(parent, child);
    }
    try {
        return CausalGraph(std::move(nodes), std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("invalid graph in ") + path + ": " + e.what());
    }
}

std::vector<std::string> markov_blanket(const CausalGraph& g, const std::string& node) {
    const int v = g.index_of(node);
    if (v < 0) throw std::invalid_argument("markov_blanket: unknown node '" + node + "'");
    std::set<int> blanket;
    for (int p : g.parents(v)) blanket.insert(p);
    for (int c : g.children(v)) {
        blanket.insert(c);
        for (int spouse : g.parents(c))
            if (spouse != v) blanket.insert(spouse);
    }
    std::vector<std::string> names;
    names.reserve(blanket.size());
    for (int i : blanket) names.push_back(g.name(i));
    std::sort(names.begin(), names.end());
    return names;
}

std::vector<Relation> gen_ci_relations(const CausalGraph& g) {
    std::vector<Relation> out;
    for (std::size_t xi = 0; xi < g.node_count(); ++xi) {
        const std::string& x = g.name(static_cast<int>(xi));
        const std::vector<std::string> blanket = markov_blanket(g, x);
        for (std::size_t yi = 0; yi < g.node_count(); ++yi) {
            if (yi == xi) continue;
            const std::string& y = g.name(static_cast<int>(yi));
            if (std::binary_search(blanket.begin(), blanket.end(), y)) continue;
            out.push_back({x, y, blanket, Verdict::CI});
        }
    }
    return out;
}

std::vector<Relation> gen_nonci_relations(const CausalGraph& g, int count, int cond_size,
                                          std::uint64_t seed) {
    if (count < 0) throw std::invalid_argument("gen_nonci_relations: count must be >= 0");
    if (cond_size < 1) throw std::invalid_argument("gen_nonci_relations: cond_size must be >= 1");
    if (g.edges().empty()) throw std::invalid_argument("gen_nonci_relations: graph has no edges");
    if (g.node_count() < static_cast<std::size_t>(cond_size) + 2)
        throw std::invalid_argument("gen_nonci_relations: need at least cond_size + 2 nodes");

    Rng rng(seed);
    std::vector<Relation> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        const auto [xi, yi] = g.edges()[rng.uniform_index(g.edges().size())];
        std::vector<int> pool;
        for (std::size_t i = 0; i < g.node_count(); ++i)
            if (static_cast<int>(i) != xi && static_cast<int>(i) != yi)
                pool.push_back(static_cast<int>(i));
        // Partial Fisher-Yates: the first cond_size entries are a uniform subset.
        for (int j = 0; j < cond_size; ++j) {
            const std::size_t pick = j + rng.uniform_index(pool.size() - j);
            std::swap(pool[j], pool[pick]);
        }
        Relation r;
        r.x_node = g.name(xi);
        r.y_node = g.name(yi);
        for (int j = 0; j < cond_size; ++j) r.z_nodes.push_back(g.name(pool[j]));
        std::sort(r.z_nodes.begin(), r.z_nodes.end());
        r.label = Verdict::NotCI;
        out.push_back(std::move(r));
    }
    return out;
}

Dataset slice_relation(const Table& data, const Relation& r) {
    if (r.z_nodes.empty())
        throw std::invalid_argument("slice_relation: conditioning set must be non-empty");
    auto col = [&](const std::string& name) {
        const int c = data.column_index(name);
        if (c < 0) throw std::invalid_argument("slice_relation: missing column '" + name + "'");
        return c;
    };
    std::vector<int> cols{col(r.x_node), col(r.y_node)};
    std::vector<std::string> z_sorted = r.z_nodes;
    std::sort(z_sorted.begin(), z_sorted.end());
    for (const auto& z : z_sorted) cols.push_back(col(z));

    const DimSpec dims{1, 1, static_cast<int>(z_sorted.size())};
    std::vector<double> values;
    values.reserve(data.rows * cols.size());
    for (std::size_t i = 0; i < data.rows; ++i)
        for (int c : cols) values.push_back(data.at(i, c));
    return Dataset(std::move(values), data.rows, dims);
}

}  // namespace ccit
