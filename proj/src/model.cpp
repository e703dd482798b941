#include "maxlin/model.hpp"

#include "maxlin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace maxlin {

WeightedDag::WeightedDag(Dag dag, std::map<std::pair<Node, Node>, double> weights)
    : dag_(std::move(dag)), weights_(std::move(weights)) {
    if (weights_.size() != dag_.edges().size()) {
        throw InvalidArgumentError("weights must be defined exactly on the edge set");
    }
    for (const auto& [edge, w] : weights_) {
        if (!dag_.has_edge(edge.first, edge.second)) {
            throw InvalidArgumentError("weight on non-edge " + std::to_string(edge.first) +
                                       "->" + std::to_string(edge.second));
        }
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw InvalidArgumentError("edge weights must be positive and finite");
        }
    }
}

double WeightedDag::weight(Node j, Node i) const {
    auto it = weights_.find({j, i});
    if (it == weights_.end()) {
        throw InvalidArgumentError("no edge " + std::to_string(j) + "->" + std::to_string(i));
    }
    return it->second;
}

NonNegMatrix WeightedDag::adjacency() const {
    const auto d = static_cast<std::size_t>(dag_.node_count());
    NonNegMatrix c(d, d);
    for (const auto& [edge, w] : weights_) {
        c(static_cast<std::size_t>(edge.first - 1), static_cast<std::size_t>(edge.second - 1)) = w;
    }
    return c;
}

double WeightedDag::path_weight(const Path& p) const {
    if (p.nodes.size() < 2) {
        throw InvalidArgumentError("path must have at least one edge");
    }
    double w = 1.0;
    for (std::size_t k = 0; k + 1 < p.nodes.size(); ++k) {
        w *= weight(p.nodes[k], p.nodes[k + 1]);
    }
    return w;
}

MlMatrix::MlMatrix(NonNegMatrix b) : b_(std::move(b)) {
    if (!b_.square()) {
        throw InvalidArgumentError("ML coefficient matrix must be square");
    }
    for (std::size_t i = 0; i < b_.rows(); ++i) {
        if (b_(i, i) != 1.0) {
            throw InvalidArgumentError("ML coefficient matrix must have unit diagonal");
        }
    }
}

MlMatrix ml_matrix_from_weights(const WeightedDag& wd) {
    return MlMatrix(closure(wd.adjacency()));
}

namespace {

/// b with only parent entries kept: b0(j,i) = b(j,i) * 1[j in pa(i)].
NonNegMatrix parent_restriction(const MlMatrix& b, const Dag& dag) {
    const auto d = static_cast<std::size_t>(dag.node_count());
    NonNegMatrix b0(d, d);
    for (const auto& [j, i] : dag.edges()) {
        b0(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1)) = b.coeff(j, i);
    }
    return b0;
}

} // namespace

bool validate_ml_matrix(const MlMatrix& b, const Dag& dag, double rel_tol) {
    const int d = dag.node_count();
    if (b.dim() != d) {
        throw InvalidArgumentError("matrix dimension does not match DAG node count");
    }
    for (Node j = 1; j <= d; ++j) {
        for (Node i = 1; i <= d; ++i) {
            const bool positive = b.coeff(j, i) > 0.0;
            if (positive != dag.reaches(j, i)) return false;
        }
    }
    const NonNegMatrix fix = elementwise_max(NonNegMatrix::identity(static_cast<std::size_t>(d)),
                                             odot(b.matrix(), parent_restriction(b, dag)));
    return approx_equal(b.matrix(), fix, rel_tol);
}

Dag minimum_ml_dag(const MlMatrix& b, double rel_tol) {
    const int d = b.dim();
    // Support must itself be the ancestor relation of some DAG: acyclic,
    // transitively closed, and consistent with the fixpoint equation.
    std::vector<std::pair<Node, Node>> support;
    for (Node j = 1; j <= d; ++j) {
        for (Node i = 1; i <= d; ++i) {
            if (j != i && b.coeff(j, i) > 0.0) support.push_back({j, i});
        }
    }
    Dag full(d, support); // throws MalformedGraphError on cycles
    if (!validate_ml_matrix(b, full, rel_tol)) {
        throw InvalidArgumentError("matrix is not an ML coefficient matrix of any DAG");
    }
    std::vector<std::pair<Node, Node>> kept;
    for (const auto& [j, i] : support) {
        double best_two_step = 0.0;
        for (Node k = 1; k <= d; ++k) {
            if (k == i || k == j) continue;
            if (b.coeff(j, k) > 0.0 && b.coeff(k, i) > 0.0) {
                best_two_step = std::max(best_two_step, b.coeff(j, k) * b.coeff(k, i));
            }
        }
        // Edge survives only if the direct route strictly dominates; a tie
        // means a longer max-weighted path exists and the edge is redundant.
        if (best_two_step == 0.0 ||
            (b.coeff(j, i) > best_two_step && !approx_equal(b.coeff(j, i), best_two_step, rel_tol))) {
            kept.push_back({j, i});
        }
    }
    return Dag(d, kept);
}

bool class_membership(const WeightedDag& candidate, const MlMatrix& b, double rel_tol) {
    if (candidate.node_count() != b.dim()) {
        throw InvalidArgumentError("candidate dimension does not match matrix");
    }
    const Dag min_dag = minimum_ml_dag(b, 1e-9);
    const Dag& cand_dag = candidate.dag();
    // 1. D^B is a subgraph of D*.
    for (const auto& [j, i] : min_dag.edges()) {
        if (!cand_dag.has_edge(j, i)) return false;
    }
    // 2. Same reachability matrix.
    if (cand_dag.reachability_matrix() != min_dag.reachability_matrix()) return false;
    // 3./4. Weights pinned on minimum-DAG edges, free in (0, b_ji] elsewhere.
    for (const auto& [edge, w] : candidate.weights()) {
        const auto [j, i] = edge;
        if (min_dag.has_edge(j, i)) {
            if (w != b.coeff(j, i)) return false;
        } else {
            const double cap = b.coeff(j, i);
            if (!(w <= cap || approx_equal(w, cap, rel_tol))) return false;
        }
    }
    return true;
}

RatioProfile ratio_profile(const MlMatrix& b, Node j, Node i) {
    const int d = b.dim();
    if (j < 1 || j > d || i < 1 || i > d) {
        throw InvalidArgumentError("node out of range");
    }
    if (i == j) {
        throw InvalidArgumentError("ratio profile requires distinct nodes");
    }
    RatioProfile out;
    out.j = j;
    out.i = i;
    if (b.is_ancestor(j, i)) {
        out.support = RatioProfile::Support::LowerBounded;
        out.bound = b.coeff(j, i);
    } else if (b.is_ancestor(i, j)) {
        out.support = RatioProfile::Support::UpperBounded;
        out.bound = 1.0 / b.coeff(i, j);
    } else {
        out.support = RatioProfile::Support::FullLine;
    }
    // Atoms sit at b_{li}/b_{lj} for common ancestors l (self included).
    for (Node l = 1; l <= d; ++l) {
        const bool l_anc_i = (l == i) || b.is_ancestor(l, i);
        const bool l_anc_j = (l == j) || b.is_ancestor(l, j);
        if (l_anc_i && l_anc_j) {
            out.atoms.push_back(b.coeff(l, i) / b.coeff(l, j));
        }
    }
    std::sort(out.atoms.begin(), out.atoms.end());
    auto last = std::unique(out.atoms.begin(), out.atoms.end(), [](double a, double c) {
        return approx_equal(a, c, 1e-12);
    });
    out.atoms.erase(last, out.atoms.end());
    return out;
}

bool class_equivalence_oracle(const MlMatrix& b, double rel_tol) {
    const int d = b.dim();
    if (d > 5) {
        throw InvalidArgumentError("class_equivalence_oracle is limited to d <= 5");
    }
    const Dag min_dag = minimum_ml_dag(b);
    // Optional edges: ancestor pairs not kept in the minimum DAG.
    std::vector<std::pair<Node, Node>> optional_edges;
    for (Node j = 1; j <= d; ++j) {
        for (Node i = 1; i <= d; ++i) {
            if (j != i && b.coeff(j, i) > 0.0 && !min_dag.has_edge(j, i)) {
                optional_edges.push_back({j, i});
            }
        }
    }
    const std::vector<double> fractions{0.25, 0.5, 1.0};
    const auto n_opt = optional_edges.size();
    if (n_opt > 10) {
        throw InvalidArgumentError("too many optional edges for exhaustive enumeration");
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << n_opt); ++mask) {
        std::vector<std::pair<Node, Node>> edges = min_dag.edges();
        std::vector<std::pair<Node, Node>> extras;
        for (std::size_t e = 0; e < n_opt; ++e) {
            if (mask & (std::size_t{1} << e)) {
                edges.push_back(optional_edges[e]);
                extras.push_back(optional_edges[e]);
            }
        }
        // Grid over the free weights; pinned weights are b itself.
        std::vector<std::size_t> grid(extras.size(), 0);
        while (true) {
            std::map<std::pair<Node, Node>, double> weights;
            for (const auto& [j, i] : min_dag.edges()) weights[{j, i}] = b.coeff(j, i);
            for (std::size_t e = 0; e < extras.size(); ++e) {
                const auto [j, i] = extras[e];
                weights[{j, i}] = fractions[grid[e]] * b.coeff(j, i);
            }
            const WeightedDag candidate(Dag(d, edges), weights);
            if (!class_membership(candidate, b)) return false;
            if (!approx_equal(ml_matrix_from_weights(candidate).matrix(), b.matrix(), rel_tol)) {
                return false;
            }
            // Weights above b_ji must be rejected and must rebuild differently.
            if (!extras.empty()) {
                auto bumped = weights;
                const auto [j, i] = extras[0];
                bumped[{j, i}] = 1.5 * b.coeff(j, i);
                const WeightedDag outsider(Dag(d, edges), bumped);
                if (class_membership(outsider, b)) return false;
                if (approx_equal(ml_matrix_from_weights(outsider).matrix(), b.matrix(), rel_tol)) {
                    return false;
                }
            }
            std::size_t e = 0;
            for (; e < grid.size(); ++e) {
                if (++grid[e] < fractions.size()) break;
                grid[e] = 0;
            }
            if (e == grid.size()) break;
        }
    }
    return true;
}

} // namespace maxlin
