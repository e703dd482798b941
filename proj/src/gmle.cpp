#include "maxlin/gmle.hpp"

#include "maxlin/errors.hpp"

#include <algorithm>
#include <cmath>

namespace maxlin {

namespace {

void check_inputs(std::span<const double> x, const MlMatrix& b, const MlMatrix& b_star,
                  const Dag& dag) {
    const int d = dag.node_count();
    if (static_cast<int>(x.size()) != d || b.dim() != d || b_star.dim() != d) {
        throw InvalidArgumentError("dimension mismatch");
    }
    for (double v : x) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw InvalidArgumentError("points must be strictly positive");
        }
    }
}

double parent_max(std::span<const double> x, const MlMatrix& m, const Dag& dag, Node i) {
    double v = 0.0;
    for (Node k : dag.parents(i)) {
        v = std::max(v, m.coeff(k, i) * x[static_cast<std::size_t>(k - 1)]);
    }
    return v;
}

enum class NodeState { Witness, Compatible, Between };

NodeState node_state(double xi, double m, double m_star, double tol) {
    const bool eq_b = approx_equal(xi, m, tol);
    const bool eq_bs = approx_equal(xi, m_star, tol);
    if (!eq_b && xi < m) return NodeState::Witness;
    if (eq_bs && !eq_b && m_star > m) return NodeState::Witness;
    if (eq_b && eq_bs) return NodeState::Compatible;
    if (!eq_b && !eq_bs && xi > std::max(m, m_star)) return NodeState::Compatible;
    return NodeState::Between;
}

} // namespace

Classification classify(std::span<const double> x, const MlMatrix& b, const MlMatrix& b_star,
                        const Dag& dag, double tol) {
    check_inputs(x, b, b_star, dag);
    const int d = dag.node_count();
    bool all_compatible = true;
    for (Node i = 1; i <= d; ++i) {
        const double xi = x[static_cast<std::size_t>(i - 1)];
        const double m = parent_max(x, b, dag, i);
        const double m_star = parent_max(x, b_star, dag, i);
        switch (node_state(xi, m, m_star, tol)) {
            case NodeState::Witness:
                return {PartitionLabel::A0, i};
            case NodeState::Between:
                all_compatible = false;
                break;
            case NodeState::Compatible:
                break;
        }
    }
    return {all_compatible ? PartitionLabel::AHalf : PartitionLabel::A1, 0};
}

double rho(std::span<const double> x, const MlMatrix& b, const MlMatrix& b_star, const Dag& dag,
           double tol) {
    switch (classify(x, b, b_star, dag, tol).label) {
        case PartitionLabel::A0: return 0.0;
        case PartitionLabel::AHalf: return 0.5;
        case PartitionLabel::A1: return 1.0;
    }
    return 0.0;
}

double rho_local(Node i, std::span<const double> x, const MlMatrix& b, const MlMatrix& b_star,
                 const Dag& dag, double tol) {
    check_inputs(x, b, b_star, dag);
    const double xi = x[static_cast<std::size_t>(i - 1)];
    const double m = parent_max(x, b, dag, i);
    const double m_star = parent_max(x, b_star, dag, i);
    switch (node_state(xi, m, m_star, tol)) {
        case NodeState::Witness: return 0.0;
        case NodeState::Compatible: return 0.5;
        case NodeState::Between: return 1.0;
    }
    return 0.0;
}

double conditional_cdf(Node i, std::span<const double> x_parents, double x_i, const MlMatrix& b,
                       const Dag& dag, const CdfEvaluator& f_zi, double tol) {
    if (static_cast<int>(x_parents.size()) != dag.node_count()) {
        throw InvalidArgumentError("dimension mismatch");
    }
    if (!(x_i > 0.0)) {
        throw InvalidArgumentError("x_i must be strictly positive");
    }
    const double m = parent_max(x_parents, b, dag, i);
    if (x_i > m || approx_equal(x_i, m, tol)) {
        return f_zi(x_i);
    }
    return 0.0;
}

bool gmle_feasible(const SampleSet& samples, const MlMatrix& m, const Dag& dag, double tol) {
    const int d = dag.node_count();
    std::vector<double> row(static_cast<std::size_t>(d));
    for (std::size_t t = 0; t < samples.n(); ++t) {
        for (Node i = 1; i <= d; ++i) row[static_cast<std::size_t>(i - 1)] = samples.value(t, i);
        if (classify(row, m, m, dag, tol).label == PartitionLabel::A0) return false;
    }
    return true;
}

GmleVerdict gmle_compare(const SampleSet& samples, const MlMatrix& cand, const MlMatrix& q,
                         const Dag& dag, double tol) {
    if (samples.dim() != dag.node_count()) {
        throw InvalidArgumentError("sample dimension does not match DAG");
    }
    if (!gmle_feasible(samples, cand, dag, tol)) {
        return GmleVerdict::CandInfeasible;
    }
    const int d = dag.node_count();
    std::vector<double> row(static_cast<std::size_t>(d));
    bool q_side_zero = false;    // some sample in A0(q, cand)
    bool cand_side_zero = false; // some sample in A0(cand, q)
    for (std::size_t t = 0; t < samples.n(); ++t) {
        for (Node i = 1; i <= d; ++i) row[static_cast<std::size_t>(i - 1)] = samples.value(t, i);
        if (!q_side_zero && classify(row, q, cand, dag, tol).label == PartitionLabel::A0) {
            q_side_zero = true;
        }
        if (!cand_side_zero && classify(row, cand, q, dag, tol).label == PartitionLabel::A0) {
            cand_side_zero = true;
        }
        if (q_side_zero && cand_side_zero) break;
    }
    // The half-set counts agree on both sides, so products compare as:
    // zero beats nothing, both-zero and both-positive tie.
    if (q_side_zero == cand_side_zero) return GmleVerdict::Tie;
    return q_side_zero ? GmleVerdict::CandWins : GmleVerdict::QWins;
}

} // namespace maxlin
