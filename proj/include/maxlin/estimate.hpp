#pragma once

#include "maxlin/distributions.hpp"
#include "maxlin/model.hpp"
#include "maxlin/simulate.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace maxlin {

/// Estimation result with the DAG known: the repaired estimate b_hat,
/// the raw per-edge minimum ratios it was built from, and per-edge counts of
/// samples attaining that minimum (atom hits).
struct EstimateReport {
    MlMatrix b_hat;
    std::map<std::pair<Node, Node>, double> b_breve_edges;
    std::map<std::pair<Node, Node>, std::size_t> atom_hits;
    std::size_t n = 0;
};

/// Minimum observed ratio x_i/x_k per DAG edge (k,i).
std::map<std::pair<Node, Node>, double> breve_edges(const SampleSet& samples, const Dag& dag);

/// Minimum observed ratios over all ancestor pairs of the DAG: the raw
/// matrix estimate. Unit diagonal, zero off the ancestor relation. Need not
/// satisfy the fixpoint equation; bhat exists to repair that.
NonNegMatrix breve_all_pairs(const SampleSet& samples, const Dag& dag);

/// Tropical-closure estimate: assemble the edge minima into an adjacency
/// matrix and close it. The result is always a valid ML coefficient matrix
/// and never smaller than the truth on any edge.
EstimateReport bhat(const SampleSet& samples, const Dag& dag);

struct LearnOptions {
    /// Relative band for "the minimum is attained again".
    double tie_tol = 1e-9;
    /// How many samples must attain the minimum to call an ancestor pair.
    std::size_t multiplicity = 2;
    /// Also project the detected parent entries through the closure.
    bool project = false;
};

/// Structure-learning output: coefficients for detected ancestor pairs, zero
/// elsewhere. Not guaranteed to be a valid ML coefficient matrix.
struct LearnedMatrix {
    NonNegMatrix b_check;
    std::vector<std::pair<Node, Node>> detected_ancestor_pairs;
    /// Present when LearnOptions::project was set and projection succeeded.
    std::optional<MlMatrix> projected;
};

/// DAG-free estimation: for every ordered pair, the pair is declared
/// ancestral when the minimal observed ratio recurs.
LearnedMatrix learn_structure(const SampleSet& samples, const LearnOptions& opts = {});

using CdfEvaluator = std::function<double(double)>;

struct CdfPoint {
    double value = 0.0;
    /// Set when the denominator fell below the floor somewhere in the
    /// recursion; the value is then unreliable and reported as-is.
    bool censored = false;
};

struct RecoveredCdfs {
    std::vector<double> grid;
    /// [node-1][grid index]
    std::vector<std::vector<CdfPoint>> by_node;
};

/// Innovation CDF recovery: sweeping nodes by ancestor count, divide the
/// marginal CDF of X_i by the product of recovered ancestor CDFs evaluated
/// at x / b_{ji}. Empty products are 1, so roots return their marginals.
RecoveredCdfs recover_innovation_cdfs(const MlMatrix& b,
                                      const std::vector<CdfEvaluator>& marginal_cdfs,
                                      const std::vector<double>& grid,
                                      double denom_floor = 1e-12);

/// Step-function empirical CDFs of the sample columns.
std::vector<CdfEvaluator> empirical_marginal_cdfs(const SampleSet& samples);

/// Smallest n with P(minimum ratio hits the atom within n samples) >= 1-p,
/// given prob_strict = P(Y_ki > b_ki): ceil(ln p / ln prob_strict).
std::size_t required_sample_size(double p, double prob_strict);

struct AtomProbability {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t n_mc = 0;
};

/// Monte-Carlo estimate of P(X_i = b_ki X_k) for a DAG edge (k,i).
AtomProbability atom_probability(const WeightedDag& wd, const InnovationSpec& spec, Node k,
                                 Node i, std::size_t n_mc, std::uint64_t seed);

} // namespace maxlin
