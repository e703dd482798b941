#include "maxlin/estimate.hpp"

#include "maxlin/errors.hpp"
#include "maxlin/parallel.hpp"
#include "maxlin/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>

namespace maxlin {

namespace {

double min_ratio(const SampleSet& samples, Node j, Node i) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < samples.n(); ++t) {
        m = std::min(m, samples.value(t, i) / samples.value(t, j));
    }
    return m;
}

std::size_t count_at_minimum(const SampleSet& samples, Node j, Node i, double minimum,
                             double tie_tol) {
    std::size_t hits = 0;
    const double band = minimum * (1.0 + tie_tol);
    for (std::size_t t = 0; t < samples.n(); ++t) {
        if (samples.value(t, i) / samples.value(t, j) <= band) ++hits;
    }
    return hits;
}

} // namespace

std::map<std::pair<Node, Node>, double> breve_edges(const SampleSet& samples, const Dag& dag) {
    if (samples.dim() != dag.node_count()) {
        throw InvalidArgumentError("sample dimension does not match DAG");
    }
    std::map<std::pair<Node, Node>, double> out;
    for (const auto& [k, i] : dag.edges()) {
        out[{k, i}] = min_ratio(samples, k, i);
    }
    return out;
}

NonNegMatrix breve_all_pairs(const SampleSet& samples, const Dag& dag) {
    if (samples.dim() != dag.node_count()) {
        throw InvalidArgumentError("sample dimension does not match DAG");
    }
    const auto d = static_cast<std::size_t>(dag.node_count());
    NonNegMatrix out(d, d);
    for (Node i = 1; i <= dag.node_count(); ++i) {
        out(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i - 1)) = 1.0;
        for (Node j : dag.ancestors(i)) {
            out(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1)) =
                min_ratio(samples, j, i);
        }
    }
    return out;
}

EstimateReport bhat(const SampleSet& samples, const Dag& dag) {
    auto breve = breve_edges(samples, dag);
    const auto d = static_cast<std::size_t>(dag.node_count());
    NonNegMatrix b0(d, d);
    for (const auto& [edge, v] : breve) {
        b0(static_cast<std::size_t>(edge.first - 1), static_cast<std::size_t>(edge.second - 1)) = v;
    }
    MlMatrix b_hat(closure(b0));
    std::map<std::pair<Node, Node>, std::size_t> hits;
    for (const auto& [edge, v] : breve) {
        hits[edge] = count_at_minimum(samples, edge.first, edge.second, v, 1e-9);
    }
    return EstimateReport{std::move(b_hat), std::move(breve), std::move(hits), samples.n()};
}

LearnedMatrix learn_structure(const SampleSet& samples, const LearnOptions& opts) {
    if (samples.n() < 2) {
        throw InsufficientDataError("structure learning needs at least two observations");
    }
    if (opts.multiplicity < 2) {
        throw InvalidArgumentError("multiplicity threshold must be at least 2");
    }
    const int d = samples.dim();
    NonNegMatrix b_check(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    std::vector<std::pair<Node, Node>> detected;
    for (Node i = 1; i <= d; ++i) {
        b_check(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i - 1)) = 1.0;
    }
    for (Node j = 1; j <= d; ++j) {
        for (Node i = 1; i <= d; ++i) {
            if (i == j) continue;
            const double m = min_ratio(samples, j, i);
            if (count_at_minimum(samples, j, i, m, opts.tie_tol) >= opts.multiplicity) {
                b_check(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1)) = m;
                detected.push_back({j, i});
            }
        }
    }
    LearnedMatrix out{std::move(b_check), std::move(detected), std::nullopt};
    if (opts.project) {
        // Detected pairs as edges; rebuild a valid matrix through the closure.
        // Throws MalformedGraphError if the detected relation has cycles.
        Dag detected_dag(d, out.detected_ancestor_pairs);
        const auto dd = static_cast<std::size_t>(d);
        NonNegMatrix b0(dd, dd);
        for (const auto& [j, i] : detected_dag.edges()) {
            b0(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1)) =
                out.b_check(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1));
        }
        out.projected = MlMatrix(closure(b0));
    }
    return out;
}

RecoveredCdfs recover_innovation_cdfs(const MlMatrix& b,
                                      const std::vector<CdfEvaluator>& marginal_cdfs,
                                      const std::vector<double>& grid, double denom_floor) {
    const int d = b.dim();
    if (static_cast<int>(marginal_cdfs.size()) != d) {
        throw InvalidArgumentError("need one marginal CDF per node");
    }
    for (double x : grid) {
        if (!(x > 0.0)) throw InvalidArgumentError("grid points must be positive");
    }

    // Recursive evaluator; nodes are processed by ascending ancestor count so
    // every ancestor CDF below is already defined.
    std::vector<std::function<CdfPoint(double)>> f_z(static_cast<std::size_t>(d));
    std::vector<Node> order(static_cast<std::size_t>(d));
    for (Node i = 1; i <= d; ++i) order[static_cast<std::size_t>(i - 1)] = i;
    std::stable_sort(order.begin(), order.end(), [&](Node a, Node c) {
        int na = 0, nc = 0;
        for (Node l = 1; l <= d; ++l) {
            na += b.is_ancestor(l, a) ? 1 : 0;
            nc += b.is_ancestor(l, c) ? 1 : 0;
        }
        return na < nc;
    });
    for (Node i : order) {
        std::vector<std::pair<Node, double>> ancestors;
        for (Node j = 1; j <= d; ++j) {
            if (b.is_ancestor(j, i)) ancestors.push_back({j, b.coeff(j, i)});
        }
        const auto marginal = marginal_cdfs[static_cast<std::size_t>(i - 1)];
        f_z[static_cast<std::size_t>(i - 1)] = [&f_z, marginal, ancestors,
                                                denom_floor](double x) -> CdfPoint {
            double denom = 1.0;
            bool censored = false;
            for (const auto& [j, bji] : ancestors) {
                const CdfPoint pj = f_z[static_cast<std::size_t>(j - 1)](x / bji);
                censored = censored || pj.censored;
                denom *= pj.value;
            }
            if (!(denom > denom_floor)) {
                return {0.0, true};
            }
            return {marginal(x) / denom, censored};
        };
    }

    RecoveredCdfs out;
    out.grid = grid;
    out.by_node.assign(static_cast<std::size_t>(d), {});
    for (Node i = 1; i <= d; ++i) {
        auto& row = out.by_node[static_cast<std::size_t>(i - 1)];
        row.reserve(grid.size());
        for (double x : grid) {
            row.push_back(f_z[static_cast<std::size_t>(i - 1)](x));
        }
    }
    return out;
}

std::vector<CdfEvaluator> empirical_marginal_cdfs(const SampleSet& samples) {
    std::vector<CdfEvaluator> out;
    for (Node i = 1; i <= samples.dim(); ++i) {
        auto sorted = std::make_shared<std::vector<double>>();
        sorted->reserve(samples.n());
        for (std::size_t t = 0; t < samples.n(); ++t) sorted->push_back(samples.value(t, i));
        std::sort(sorted->begin(), sorted->end());
        out.push_back([sorted](double x) {
            const auto it = std::upper_bound(sorted->begin(), sorted->end(), x);
            return static_cast<double>(it - sorted->begin()) /
                   static_cast<double>(sorted->size());
        });
    }
    return out;
}

std::size_t required_sample_size(double p, double prob_strict) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw InvalidArgumentError("p must lie strictly inside (0,1)");
    }
    if (!(prob_strict > 0.0) || !(prob_strict < 1.0)) {
        throw InvalidArgumentError("prob_strict must lie strictly inside (0,1)");
    }
    const double n = std::log(p) / std::log(prob_strict);
    return static_cast<std::size_t>(std::max(1.0, std::ceil(n)));
}

AtomProbability atom_probability(const WeightedDag& wd, const InnovationSpec& spec, Node k,
                                 Node i, std::size_t n_mc, std::uint64_t seed) {
    if (!wd.dag().has_edge(k, i)) {
        throw InvalidArgumentError("atom_probability requires an edge (k,i)");
    }
    if (n_mc < 1) throw InvalidArgumentError("need n_mc >= 1");
    const MlMatrix b = ml_matrix_from_weights(wd);
    const double b_ki = b.coeff(k, i);
    const int d = wd.node_count();

    std::atomic<std::size_t> hits{0};
    parallel_for_chunks(n_mc, [&](std::size_t begin, std::size_t end) {
        std::size_t local = 0;
        for (std::size_t t = begin; t < end; ++t) {
            double x_k = 0.0, x_i = 0.0;
            for (Node j = 1; j <= d; ++j) {
                const double z = spec.node(j).quantile(
                    rng::uniform01(seed, t, static_cast<std::uint64_t>(j)));
                x_k = std::max(x_k, b.coeff(j, k) * z);
                x_i = std::max(x_i, b.coeff(j, i) * z);
            }
            if (x_i <= b_ki * x_k * (1.0 + 1e-9)) ++local;
        }
        hits += local;
    });
    const double p = static_cast<double>(hits.load()) / static_cast<double>(n_mc);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n_mc));
    return AtomProbability{p, se, n_mc};
}

} // namespace maxlin
