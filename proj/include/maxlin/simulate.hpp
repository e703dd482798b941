#pragma once

#include "maxlin/distributions.hpp"
#include "maxlin/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace maxlin {

/// n x d matrix of strictly positive observations, one realization per row.
/// Carries the seed and a digest of whatever generated it.
class SampleSet {
public:
    SampleSet(std::size_t n, int d, std::vector<double> values,
              std::uint64_t seed = 0, std::string digest = {});

    std::size_t n() const { return n_; }
    int dim() const { return d_; }

    /// Row t (0-based), node i (1-based).
    double value(std::size_t t, Node i) const {
        return values_[t * static_cast<std::size_t>(d_) + static_cast<std::size_t>(i - 1)];
    }

    const std::vector<double>& values() const { return values_; }
    std::uint64_t seed() const { return seed_; }
    const std::string& digest() const { return digest_; }

private:
    std::size_t n_;
    int d_;
    std::vector<double> values_;
    std::uint64_t seed_;
    std::string digest_;
};

/// FNV-1a digest of a weighted DAG plus innovation spec, used as sample
/// provenance. Stable across runs for identical models.
std::string model_digest(const WeightedDag& wd, const InnovationSpec& spec);

/// i.i.d. innovation rows; column i drawn from spec's node-i distribution by
/// inverse transform. Deterministic in (seed, row, node).
SampleSet sample_innovations(const InnovationSpec& spec, std::size_t n, std::uint64_t seed);

/// X = Z odot B rowwise: X_i = max_j b_{ji} Z_j.
SampleSet push_forward(const SampleSet& z, const MlMatrix& b);

/// Samples the model via X = Z odot B with B = closure(C).
SampleSet simulate_model(const WeightedDag& wd, const InnovationSpec& spec, std::size_t n,
                         std::uint64_t seed);

/// Same law evaluated through the structural recursion
/// X_i = max_k c_{ki} X_k v Z_i in topological order. Dual route used to
/// cross-check simulate_model.
SampleSet simulate_model_recursive(const WeightedDag& wd, const InnovationSpec& spec,
                                   std::size_t n, std::uint64_t seed);

} // namespace maxlin
