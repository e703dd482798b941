#pragma once

#include "maxlin/estimate.hpp"
#include "maxlin/model.hpp"
#include "maxlin/simulate.hpp"

#include <span>

namespace maxlin {

/// Which cell of the three-way partition {A0, A1/2, A1} a point falls in.
/// The partition underlies the pairwise density rho(., B, B*), which takes
/// the values 0, 1/2, 1 on the respective cells.
enum class PartitionLabel { A0, AHalf, A1 };

struct Classification {
    PartitionLabel label = PartitionLabel::AHalf;
    /// First node (ascending) witnessing A0 membership; 0 otherwise.
    Node witness = 0;
};

/// Classifies x against the pair (b, b_star) on the given DAG. Per node i,
/// with m = max over parents of b_ki x_k and m* the same under b_star:
///   A0 witness:  x_i < m, or x_i = m* > m;
///   compatible:  x_i = m = m*, or x_i above both maxima;
/// A0 if any node witnesses, A1/2 if every node is compatible, A1 otherwise.
/// Equalities are taken at relative tolerance `tol`.
Classification classify(std::span<const double> x, const MlMatrix& b, const MlMatrix& b_star,
                        const Dag& dag, double tol = 1e-9);

/// The pairwise density value: 0, 0.5 or 1.
double rho(std::span<const double> x, const MlMatrix& b, const MlMatrix& b_star, const Dag& dag,
           double tol = 1e-9);

/// Density of the star DAG around node i (its parents plus i, edges k->i
/// with weights b_ki and b*_ki). Only the Pa(i) coordinates of x are read.
double rho_local(Node i, std::span<const double> x, const MlMatrix& b, const MlMatrix& b_star,
                 const Dag& dag, double tol = 1e-9);

/// Regular conditional distribution function of X_i given its parents:
/// F_{Z_i}(x_i) when x_i clears the parent maximum, 0 below it. Only the
/// pa(i) coordinates of x_parents are read.
double conditional_cdf(Node i, std::span<const double> x_parents, double x_i, const MlMatrix& b,
                       const Dag& dag, const CdfEvaluator& f_zi, double tol = 1e-9);

enum class GmleVerdict { CandWins, QWins, Tie, CandInfeasible };

/// Pairwise generalized-likelihood comparison of two candidate matrices on a
/// sample. Likelihood products are never formed: with the half-sets shared,
/// the comparison reduces to which side has a sample in its zero set.
GmleVerdict gmle_compare(const SampleSet& samples, const MlMatrix& cand, const MlMatrix& q,
                         const Dag& dag, double tol = 1e-9);

/// First GMLE feasibility condition on its own: no sample may fall in the
/// zero set of rho(., m, m).
bool gmle_feasible(const SampleSet& samples, const MlMatrix& m, const Dag& dag,
                   double tol = 1e-9);

} // namespace maxlin
