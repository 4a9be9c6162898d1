#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ccit/ccit.hpp"
#include "ccit/dataset.hpp"

namespace ccit {

/// Directed acyclic graph over named nodes. Construction rejects cycles,
/// duplicate names/edges and self-loops.
class CausalGraph {
public:
    CausalGraph(std::vector<std::string> nodes,
                std::vector<std::pair<std::string, std::string>> edges);

    // Parses the text format: one "parent -> child" edge per line, '#' starts
    // a comment, blank lines ignored. Nodes appear in order of first mention.
    static CausalGraph load(const std::string& path);

    std::size_t node_count() const { return nodes_.size(); }
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int index_of(const std::string& name) const;  // -1 when absent
    const std::string& name(int i) const { return nodes_[i]; }
    const std::vector<int>& parents(int i) const { return parents_[i]; }
    const std::vector<int>& children(int i) const { return children_[i]; }

private:
    void check_acyclic() const;

    std::vector<std::string> nodes_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> parents_, children_;
};

struct Relation {
    std::string x_node, y_node;
    std::vector<std::string> z_nodes;  // sorted by name
    Verdict label = Verdict::CI;
};

/// Parents, children and parents-of-children of a node (the node itself
/// excluded), sorted by name.
std::vector<std::string> markov_blanket(const CausalGraph& g, const std::string& node);

/// For each node X with blanket Z, one CI relation (X, Y, Z) per node Y
/// outside Z ∪ {X}; deterministic order (node order, then Y order).
std::vector<Relation> gen_ci_relations(const CausalGraph& g);

/// `count` NotCI relations: each draws an edge uniformly and a cond_size
/// subset of the remaining nodes uniformly; sampled with replacement across
/// draws, deterministic per seed.
std::vector<Relation> gen_nonci_relations(const CausalGraph& g, int count, int cond_size,
                                          std::uint64_t seed);

/// Slices the named columns of a table into a Dataset with dims (1, 1, |Z|).
/// The relation's Z set must be non-empty (the bootstrap needs Z coordinates).
Dataset slice_relation(const Table& data, const Relation& r);

}  // namespace ccit
