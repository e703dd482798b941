#include "maxlin/graph.hpp"

#include "maxlin/errors.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

namespace maxlin {

Dag::Dag(int d, std::vector<std::pair<Node, Node>> edges)
    : d_(d), edges_(std::move(edges)) {
    if (d_ < 1) {
        throw MalformedGraphError("node count must be at least 1");
    }
    std::set<std::pair<Node, Node>> seen;
    parents_.assign(d_, {});
    children_.assign(d_, {});
    for (const auto& [j, i] : edges_) {
        check_node(j);
        check_node(i);
        if (j == i) {
            throw MalformedGraphError("self-loop at node " + std::to_string(i));
        }
        if (!seen.insert({j, i}).second) {
            throw MalformedGraphError("duplicate edge " + std::to_string(j) + "->" +
                                      std::to_string(i));
        }
        parents_[i - 1].push_back(j);
        children_[j - 1].push_back(i);
    }
    std::sort(edges_.begin(), edges_.end());
    for (auto& p : parents_) std::sort(p.begin(), p.end());
    for (auto& c : children_) std::sort(c.begin(), c.end());

    // Kahn's algorithm with a min-label heap; doubles as the cycle check.
    std::vector<int> indegree(d_);
    for (Node i = 1; i <= d_; ++i) indegree[i - 1] = static_cast<int>(parents_[i - 1].size());
    std::priority_queue<Node, std::vector<Node>, std::greater<>> ready;
    for (Node i = 1; i <= d_; ++i) {
        if (indegree[i - 1] == 0) ready.push(i);
    }
    topo_.reserve(d_);
    while (!ready.empty()) {
        const Node v = ready.top();
        ready.pop();
        topo_.push_back(v);
        for (Node c : children_[v - 1]) {
            if (--indegree[c - 1] == 0) ready.push(c);
        }
    }
    if (static_cast<int>(topo_.size()) != d_) {
        throw MalformedGraphError("edge set contains a cycle");
    }

    // Ancestor sets by sweeping the topological order: An-reachability as
    // boolean rows, then materialized as sorted vectors.
    reach_.assign(d_, std::vector<bool>(d_, false));
    for (Node v : topo_) {
        reach_[v - 1][v - 1] = true;
        for (Node p : parents_[v - 1]) {
            for (Node j = 1; j <= d_; ++j) {
                if (reach_[j - 1][p - 1]) reach_[j - 1][v - 1] = true;
            }
        }
    }
    ancestors_.assign(d_, {});
    descendants_.assign(d_, {});
    for (Node j = 1; j <= d_; ++j) {
        for (Node i = 1; i <= d_; ++i) {
            if (j != i && reach_[j - 1][i - 1]) {
                ancestors_[i - 1].push_back(j);
                descendants_[j - 1].push_back(i);
            }
        }
    }
}

void Dag::check_node(Node v) const {
    if (v < 1 || v > d_) {
        throw InvalidArgumentError("node " + std::to_string(v) + " out of range 1.." +
                                   std::to_string(d_));
    }
}

bool Dag::has_edge(Node j, Node i) const {
    check_node(j);
    check_node(i);
    return std::binary_search(edges_.begin(), edges_.end(), std::pair<Node, Node>{j, i});
}

const std::vector<Node>& Dag::parents(Node i) const {
    check_node(i);
    return parents_[i - 1];
}

const std::vector<Node>& Dag::children(Node j) const {
    check_node(j);
    return children_[j - 1];
}

const std::vector<Node>& Dag::ancestors(Node i) const {
    check_node(i);
    return ancestors_[i - 1];
}

std::vector<Node> Dag::ancestors_and_self(Node i) const {
    std::vector<Node> out = ancestors(i);
    out.insert(std::upper_bound(out.begin(), out.end(), i), i);
    return out;
}

const std::vector<Node>& Dag::descendants(Node j) const {
    check_node(j);
    return descendants_[j - 1];
}

bool Dag::reaches(Node j, Node i) const {
    check_node(j);
    check_node(i);
    return reach_[j - 1][i - 1];
}

std::vector<std::vector<bool>> Dag::reachability_matrix() const { return reach_; }

std::vector<Path> Dag::all_paths(Node j, Node i, std::size_t cap) const {
    check_node(j);
    check_node(i);
    if (j == i) {
        throw InvalidArgumentError("all_paths requires distinct endpoints");
    }
    std::vector<Path> out;
    if (!reach_[j - 1][i - 1]) return out;
    std::vector<Node> stack{j};
    // Iterative DFS restricted to nodes that still reach i.
    auto extend = [&](auto&& self, Node v) -> void {
        if (v == i) {
            if (out.size() >= cap) {
                throw TooManyPathsError("path count exceeds cap of " + std::to_string(cap));
            }
            out.push_back(Path{stack});
            return;
        }
        for (Node c : children_[v - 1]) {
            if (!reach_[c - 1][i - 1]) continue;
            stack.push_back(c);
            self(self, c);
            stack.pop_back();
        }
    };
    extend(extend, j);
    return out;
}

} // namespace maxlin
