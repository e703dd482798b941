#pragma once

#include "maxlin/graph.hpp"
#include "maxlin/tropical.hpp"

#include <map>
#include <vector>

namespace maxlin {

/// DAG with strictly positive weights on exactly its edge set. The weights
/// are the structural coefficients: node i is the max of w(k,i)*X_k over
/// parents k and its own innovation.
class WeightedDag {
public:
    WeightedDag(Dag dag, std::map<std::pair<Node, Node>, double> weights);

    const Dag& dag() const { return dag_; }
    int node_count() const { return dag_.node_count(); }
    double weight(Node j, Node i) const;
    const std::map<std::pair<Node, Node>, double>& weights() const { return weights_; }

    /// Weighted adjacency matrix C (0-based), zero off the edge set.
    NonNegMatrix adjacency() const;

    /// Product of edge weights along a path.
    double path_weight(const Path& p) const;

private:
    Dag dag_;
    std::map<std::pair<Node, Node>, double> weights_;
};

/// The max-linear coefficient matrix B: unit diagonal, entry (j,i) positive
/// iff j is an ancestor of i, in which case it is the maximum weight over
/// all paths j -> i. This is the identifiable parameter of the model.
class MlMatrix {
public:
    explicit MlMatrix(NonNegMatrix b);

    int dim() const { return static_cast<int>(b_.rows()); }
    const NonNegMatrix& matrix() const { return b_; }

    /// b_{ji} with 1-based node labels.
    double coeff(Node j, Node i) const { return b_(static_cast<std::size_t>(j - 1),
                                                   static_cast<std::size_t>(i - 1)); }

    /// j in an(i) under this matrix (positive off-diagonal entry).
    bool is_ancestor(Node j, Node i) const { return j != i && coeff(j, i) > 0.0; }

private:
    NonNegMatrix b_;
};

/// Support and atoms of the ratio Y_ji = X_i / X_j between two components.
struct RatioProfile {
    enum class Support { LowerBounded, UpperBounded, FullLine };
    Node j = 0;
    Node i = 0;
    Support support = Support::FullLine;
    /// b_ji for LowerBounded, 1/b_ij for UpperBounded, 0 otherwise.
    double bound = 0.0;
    /// Point masses b_{li}/b_{lj} over common ancestors l; sorted, deduped.
    std::vector<double> atoms;
};

/// B = closure(C): maximum path weights for all ancestor pairs.
MlMatrix ml_matrix_from_weights(const WeightedDag& wd);

/// True iff the support of b equals the reachability relation of dag and b
/// solves b = I v (b odot b0), where b0 keeps only parent entries.
bool validate_ml_matrix(const MlMatrix& b, const Dag& dag, double rel_tol = 1e-9);

/// Smallest DAG representing b: keeps edge j->i only when the direct edge
/// strictly beats every two-step route b_jk * b_ki. Throws if b is not an
/// ML coefficient matrix of any DAG.
Dag minimum_ml_dag(const MlMatrix& b, double rel_tol = 1e-9);

/// Representation-class membership: does (D*, C*) generate exactly the
/// model with coefficient matrix b?
bool class_membership(const WeightedDag& candidate, const MlMatrix& b, double rel_tol = 1e-9);

/// Support kind and atom set of Y_ji = X_i / X_j per the ancestor relation
/// encoded in b. Atom duplicates are merged at relative tolerance 1e-12.
RatioProfile ratio_profile(const MlMatrix& b, Node j, Node i);

/// Executable identifiability check for small models (d <= 5): every member
/// of the equivalence class of b rebuilds b, and perturbed non-members do
/// not. Exhaustive over DAG completions, grid-sampled over free weights.
bool class_equivalence_oracle(const MlMatrix& b, double rel_tol = 1e-12);

} // namespace maxlin
