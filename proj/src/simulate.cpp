#include "maxlin/simulate.hpp"

#include "maxlin/errors.hpp"
#include "maxlin/rng.hpp"

#include <cmath>
#include <sstream>

namespace maxlin {

SampleSet::SampleSet(std::size_t n, int d, std::vector<double> values, std::uint64_t seed,
                     std::string digest)
    : n_(n), d_(d), values_(std::move(values)), seed_(seed), digest_(std::move(digest)) {
    if (n_ < 1 || d_ < 1) {
        throw InvalidArgumentError("sample set must have n >= 1 and d >= 1");
    }
    if (values_.size() != n_ * static_cast<std::size_t>(d_)) {
        throw InvalidArgumentError("sample value count does not match n x d");
    }
    for (double v : values_) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw MalformedDataError("sample values must be strictly positive and finite");
        }
    }
}

std::string model_digest(const WeightedDag& wd, const InnovationSpec& spec) {
    std::ostringstream canon;
    canon << "d=" << wd.node_count() << ";";
    for (const auto& [edge, w] : wd.weights()) {
        canon << edge.first << ">" << edge.second << "=" << std::hexfloat << w << ";";
    }
    for (Node i = 1; i <= spec.dim(); ++i) {
        const auto& dist = spec.node(i);
        canon << i << ":" << dist.family_name() << "(" << std::hexfloat << dist.param1() << ","
              << dist.param2() << ");";
    }
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon.str()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream hex;
    hex << std::hex << h;
    return hex.str();
}

SampleSet sample_innovations(const InnovationSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw InvalidArgumentError("need n >= 1 samples");
    const int d = spec.dim();
    std::vector<double> values(n * static_cast<std::size_t>(d));
    for (std::size_t t = 0; t < n; ++t) {
        for (Node i = 1; i <= d; ++i) {
            const double u = rng::uniform01(seed, t, static_cast<std::uint64_t>(i));
            values[t * static_cast<std::size_t>(d) + static_cast<std::size_t>(i - 1)] =
                spec.node(i).quantile(u);
        }
    }
    return SampleSet(n, d, std::move(values), seed, "innovations");
}

SampleSet push_forward(const SampleSet& z, const MlMatrix& b) {
    if (z.dim() != b.dim()) {
        throw InvalidArgumentError("sample dimension does not match matrix");
    }
    const int d = z.dim();
    std::vector<double> values(z.n() * static_cast<std::size_t>(d));
    for (std::size_t t = 0; t < z.n(); ++t) {
        for (Node i = 1; i <= d; ++i) {
            double x = 0.0;
            for (Node j = 1; j <= d; ++j) {
                const double v = b.coeff(j, i) * z.value(t, j);
                if (v > x) x = v;
            }
            values[t * static_cast<std::size_t>(d) + static_cast<std::size_t>(i - 1)] = x;
        }
    }
    return SampleSet(z.n(), d, std::move(values), z.seed(), z.digest());
}

SampleSet simulate_model(const WeightedDag& wd, const InnovationSpec& spec, std::size_t n,
                         std::uint64_t seed) {
    if (wd.node_count() != spec.dim()) {
        throw InvalidArgumentError("model dimension does not match innovation spec");
    }
    const SampleSet z = sample_innovations(spec, n, seed);
    SampleSet x = push_forward(z, ml_matrix_from_weights(wd));
    return SampleSet(x.n(), x.dim(), x.values(), seed, model_digest(wd, spec));
}

SampleSet simulate_model_recursive(const WeightedDag& wd, const InnovationSpec& spec,
                                   std::size_t n, std::uint64_t seed) {
    if (wd.node_count() != spec.dim()) {
        throw InvalidArgumentError("model dimension does not match innovation spec");
    }
    const int d = wd.node_count();
    const SampleSet z = sample_innovations(spec, n, seed);
    std::vector<double> values(n * static_cast<std::size_t>(d));
    const auto& order = wd.dag().topological_order();
    for (std::size_t t = 0; t < n; ++t) {
        for (Node i : order) {
            double x = z.value(t, i);
            for (Node k : wd.dag().parents(i)) {
                const double v =
                    wd.weight(k, i) *
                    values[t * static_cast<std::size_t>(d) + static_cast<std::size_t>(k - 1)];
                if (v > x) x = v;
            }
            values[t * static_cast<std::size_t>(d) + static_cast<std::size_t>(i - 1)] = x;
        }
    }
    return SampleSet(n, d, std::move(values), seed, model_digest(wd, spec));
}

} // namespace maxlin
