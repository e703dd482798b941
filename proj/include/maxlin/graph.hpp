#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace maxlin {

/// Node label; 1-based throughout the public API.
using Node = int;

/// Directed path [k_0 -> k_1 -> ... -> k_n], every consecutive pair an edge.
struct Path {
    std::vector<Node> nodes;
};

/// Immutable directed acyclic graph on nodes {1..d}.
///
/// Construction validates the edge set (range, self-loops, duplicates,
/// acyclicity) and precomputes ancestor/descendant sets, so all queries
/// afterwards are pure and cheap.
class Dag {
public:
    Dag(int d, std::vector<std::pair<Node, Node>> edges);

    int node_count() const { return d_; }
    const std::vector<std::pair<Node, Node>>& edges() const { return edges_; }

    bool has_edge(Node j, Node i) const;

    /// Direct predecessors {j : j -> i}, ascending.
    const std::vector<Node>& parents(Node i) const;
    /// Direct successors {k : j -> k}, ascending.
    const std::vector<Node>& children(Node j) const;

    /// an(i): strict ancestors, ascending.
    const std::vector<Node>& ancestors(Node i) const;
    /// An(i) = an(i) plus i itself, ascending.
    std::vector<Node> ancestors_and_self(Node i) const;
    /// de(i): strict descendants, ascending.
    const std::vector<Node>& descendants(Node i) const;

    /// True iff j is in An(i), i.e. j reaches i (j == i counts).
    bool reaches(Node j, Node i) const;

    /// R[j-1][i-1] = true iff j in An(i); diagonal true.
    std::vector<std::vector<bool>> reachability_matrix() const;

    /// Every edge goes forward; ties broken by ascending label.
    const std::vector<Node>& topological_order() const { return topo_; }

    /// All directed paths from j to i (empty if unreachable). Path counts are
    /// exponential in general; enumeration beyond `cap` paths throws
    /// TooManyPathsError. Oracle-grade, not a production route.
    std::vector<Path> all_paths(Node j, Node i, std::size_t cap = 1000000) const;

private:
    void check_node(Node v) const;

    int d_;
    std::vector<std::pair<Node, Node>> edges_;
    std::vector<std::vector<Node>> parents_;     // [i-1]
    std::vector<std::vector<Node>> children_;    // [j-1]
    std::vector<std::vector<Node>> ancestors_;   // [i-1]
    std::vector<std::vector<Node>> descendants_; // [j-1]
    std::vector<std::vector<bool>> reach_;       // [j-1][i-1], An relation
    std::vector<Node> topo_;
};

} // namespace maxlin
