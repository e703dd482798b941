// Command-line front end: simulation, estimation, structure learning,
// ratio analysis, GMLE testing, sample-size planning, innovation recovery,
// and the exact-recovery consistency experiment.

#include "maxlin/errors.hpp"
#include "maxlin/estimate.hpp"
#include "maxlin/gmle.hpp"
#include "maxlin/io.hpp"
#include "maxlin/model.hpp"
#include "maxlin/parallel.hpp"
#include "maxlin/rng.hpp"
#include "maxlin/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr const char* kVersion = "0.1.0";

using maxlin::Node;
using nlohmann::json;

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

maxlin::io::RunManifest make_manifest(const std::string& command,
                                      std::optional<std::uint64_t> seed,
                                      const std::vector<std::string>& inputs,
                                      double wall_seconds) {
    maxlin::io::RunManifest m;
    m.command = command;
    m.seed = seed;
    for (const auto& path : inputs) {
        m.input_digests.push_back({path, maxlin::io::file_digest(path)});
    }
    m.tool_version = kVersion;
    m.wall_seconds = wall_seconds;
    return m;
}

void emit_manifest(const maxlin::io::RunManifest& m, const std::string& artifact,
                   bool to_stderr) {
    if (!artifact.empty()) maxlin::io::write_manifest(artifact, m);
    if (to_stderr) std::cerr << maxlin::io::manifest_json(m) << "\n";
}

std::pair<Node, Node> parse_edge_arg(const std::string& s) {
    try {
        const auto comma = s.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("");
        return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
    } catch (const std::logic_error&) {
        throw maxlin::InvalidArgumentError("--edge expects 'k,i'");
    }
}

std::vector<double> parse_grid_arg(const std::string& s) {
    // "lo:hi:count", linearly spaced inclusive.
    std::stringstream ss(s);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    double lo = 0.0, hi = 0.0;
    int count = 0;
    try {
        if (parts.size() != 3) throw std::invalid_argument("");
        lo = std::stod(parts[0]);
        hi = std::stod(parts[1]);
        count = std::stoi(parts[2]);
    } catch (const std::logic_error&) {
        throw maxlin::InvalidArgumentError("--grid expects 'lo:hi:count'");
    }
    if (!(lo > 0.0) || !(hi > lo) || count < 2) {
        throw maxlin::InvalidArgumentError("--grid requires 0 < lo < hi and count >= 2");
    }
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        grid[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (count - 1);
    }
    return grid;
}

std::vector<std::size_t> parse_n_grid(const std::string& s) {
    std::stringstream ss(s);
    std::string part;
    std::vector<std::size_t> out;
    try {
        while (std::getline(ss, part, ',')) out.push_back(std::stoul(part));
    } catch (const std::logic_error&) {
        throw maxlin::InvalidArgumentError("--n-grid expects 'n1,n2,...'");
    }
    if (out.empty()) throw maxlin::InvalidArgumentError("--n-grid expects 'n1,n2,...'");
    return out;
}

/// Analytic marginals of the model: F_{X_i}(x) = prod over An(i) of
/// F_{Z_j}(x / b_ji).
std::vector<maxlin::CdfEvaluator> analytic_marginals(const maxlin::io::ModelFile& model) {
    const maxlin::MlMatrix b = maxlin::ml_matrix_from_weights(model.wd);
    std::vector<maxlin::CdfEvaluator> out;
    for (Node i = 1; i <= model.wd.node_count(); ++i) {
        std::vector<std::pair<maxlin::Distribution, double>> factors;
        for (Node j : model.wd.dag().ancestors_and_self(i)) {
            factors.push_back({model.innovations.node(j), b.coeff(j, i)});
        }
        out.push_back([factors](double x) {
            double p = 1.0;
            for (const auto& [dist, bji] : factors) p *= dist.cdf(x / bji);
            return p;
        });
    }
    return out;
}

int cmd_simulate(const std::string& model_path, std::size_t n, std::uint64_t seed,
                 const std::string& out_csv) {
    Stopwatch watch;
    const auto model = maxlin::io::read_model_file(model_path);
    const auto samples = maxlin::simulate_model(model.wd, model.innovations, n, seed);
    maxlin::io::write_samples_csv(out_csv, samples);
    emit_manifest(make_manifest("simulate", seed, {model_path}, watch.seconds()), out_csv, true);
    return 0;
}

int cmd_estimate(const std::string& samples_path, const std::string& dag_path,
                 const std::string& out_json) {
    Stopwatch watch;
    const auto samples = maxlin::io::read_samples_csv(samples_path);
    const auto dag = maxlin::io::read_dag_file(dag_path);
    const auto report = maxlin::bhat(samples, dag);
    if (!maxlin::validate_ml_matrix(report.b_hat, dag)) {
        throw std::logic_error("estimate produced an invalid ML coefficient matrix");
    }
    maxlin::io::write_estimate_report(out_json, report);
    emit_manifest(make_manifest("estimate", std::nullopt, {samples_path, dag_path},
                                watch.seconds()),
                  out_json, false);
    return 0;
}

int cmd_learn(const std::string& samples_path, const std::string& out_json, double tie_tol,
              std::size_t multiplicity, bool project) {
    Stopwatch watch;
    const auto samples = maxlin::io::read_samples_csv(samples_path);
    maxlin::LearnOptions opts;
    opts.tie_tol = tie_tol;
    opts.multiplicity = multiplicity;
    opts.project = project;
    const auto learned = maxlin::learn_structure(samples, opts);
    maxlin::io::write_learned_matrix(out_json, learned);
    emit_manifest(make_manifest("learn", std::nullopt, {samples_path}, watch.seconds()),
                  out_json, false);
    return 0;
}

int cmd_sample_size(double p, std::optional<double> prob_strict, const std::string& model_path,
                    const std::string& edge_arg, std::size_t n_mc, std::uint64_t seed) {
    Stopwatch watch;
    json out;
    if (prob_strict) {
        out["prob_strict"] = *prob_strict;
        out["n"] = maxlin::required_sample_size(p, *prob_strict);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    if (model_path.empty() || edge_arg.empty()) {
        throw maxlin::InvalidArgumentError(
            "need either --prob-strict or --model together with --edge");
    }
    const auto model = maxlin::io::read_model_file(model_path);
    const auto [k, i] = parse_edge_arg(edge_arg);
    const auto atom = maxlin::atom_probability(model.wd, model.innovations, k, i, n_mc, seed);
    const double strict = 1.0 - atom.estimate;
    out["atom_probability"] = atom.estimate;
    out["prob_strict"] = strict;
    out["std_error"] = atom.std_error;
    out["n_mc"] = atom.n_mc;
    out["n"] = maxlin::required_sample_size(p, strict);
    std::cout << out.dump(2) << "\n";
    std::cerr << maxlin::io::manifest_json(
                     make_manifest("sample-size", seed, {model_path}, watch.seconds()))
              << "\n";
    return 0;
}

int cmd_consistency(const std::string& model_path, std::size_t replicates,
                    const std::string& n_grid_arg, std::uint64_t seed,
                    const std::string& out_csv) {
    Stopwatch watch;
    const auto model = maxlin::io::read_model_file(model_path);
    if (!model.innovations.full_support()) {
        // Exact-recovery guarantees assume innovations supported on all of
        // (0,inf); restricted-support fixtures are for unit tests only.
        throw maxlin::InvalidArgumentError(
            "consistency experiment requires full-support innovations");
    }
    const auto n_grid = parse_n_grid(n_grid_arg);
    const maxlin::MlMatrix truth = maxlin::ml_matrix_from_weights(model.wd);
    const auto& edges = model.wd.dag().edges();

    std::ofstream out(out_csv, std::ios::binary);
    if (!out) throw maxlin::MalformedDataError("cannot write " + out_csv);
    out << "n,target,successes,replicates,frequency,log_failure\n";
    for (std::size_t gi = 0; gi < n_grid.size() && replicates > 0; ++gi) {
        const std::size_t n = n_grid[gi];
        std::vector<std::size_t> edge_hits(edges.size(), 0);
        std::atomic<std::size_t> full_hits{0};
        std::vector<std::size_t> edge_hits_flat(edges.size() * replicates, 0);
        maxlin::parallel_for_chunks(replicates, [&](std::size_t begin, std::size_t end) {
            std::size_t local_full = 0;
            for (std::size_t r = begin; r < end; ++r) {
                const std::uint64_t rep_seed = maxlin::rng::key(seed, gi, r);
                const auto samples =
                    maxlin::simulate_model(model.wd, model.innovations, n, rep_seed);
                const auto report = maxlin::bhat(samples, model.wd.dag());
                bool all = true;
                for (std::size_t e = 0; e < edges.size(); ++e) {
                    const auto [k, i] = edges[e];
                    const bool hit = maxlin::approx_equal(report.b_hat.coeff(k, i),
                                                          truth.coeff(k, i), 1e-12);
                    if (hit) edge_hits_flat[e * replicates + r] = 1;
                    all = all && hit;
                }
                if (all &&
                    maxlin::approx_equal(report.b_hat.matrix(), truth.matrix(), 1e-12)) {
                    ++local_full;
                }
            }
            full_hits += local_full;
        });
        for (std::size_t e = 0; e < edges.size(); ++e) {
            for (std::size_t r = 0; r < replicates; ++r) {
                edge_hits[e] += edge_hits_flat[e * replicates + r];
            }
        }
        auto emit_row = [&](const std::string& target, std::size_t successes) {
            const double freq =
                static_cast<double>(successes) / static_cast<double>(replicates);
            out << n << "," << target << "," << successes << "," << replicates << ","
                << maxlin::io::format_double(freq) << ",";
            if (successes < replicates) {
                out << maxlin::io::format_double(std::log(1.0 - freq));
            }
            out << "\n";
        };
        for (std::size_t e = 0; e < edges.size(); ++e) {
            emit_row(std::to_string(edges[e].first) + "->" + std::to_string(edges[e].second),
                     edge_hits[e]);
        }
        emit_row("B", full_hits.load());
    }
    out.close();
    emit_manifest(make_manifest("consistency", seed, {model_path}, watch.seconds()), out_csv,
                  true);
    return 0;
}

int cmd_analyze_ratios(const std::string& model_path, const std::string& b_path, Node i,
                       Node j) {
    std::optional<maxlin::MlMatrix> b;
    if (!model_path.empty()) {
        const auto model = maxlin::io::read_model_file(model_path);
        b = maxlin::ml_matrix_from_weights(model.wd);
    } else if (!b_path.empty()) {
        b = maxlin::MlMatrix(maxlin::io::read_matrix_file(b_path));
    } else {
        throw maxlin::InvalidArgumentError("need --model or --b");
    }
    const auto profile = maxlin::ratio_profile(*b, j, i);
    json out;
    out["j"] = profile.j;
    out["i"] = profile.i;
    switch (profile.support) {
        case maxlin::RatioProfile::Support::LowerBounded:
            out["support"] = "lower_bounded";
            out["bound"] = profile.bound;
            break;
        case maxlin::RatioProfile::Support::UpperBounded:
            out["support"] = "upper_bounded";
            out["bound"] = profile.bound;
            break;
        case maxlin::RatioProfile::Support::FullLine:
            out["support"] = "full_line";
            break;
    }
    out["atoms"] = profile.atoms;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_gmle_test(const std::string& samples_path, const std::string& dag_path,
                  const std::string& candidates_path, const std::string& out_path) {
    const auto samples = maxlin::io::read_samples_csv(samples_path);
    const auto dag = maxlin::io::read_dag_file(dag_path);
    const auto candidates = maxlin::io::read_candidates_file(candidates_path);
    const auto report = maxlin::bhat(samples, dag);

    json rows = json::array();
    for (const auto& cand : candidates) {
        json row;
        row["name"] = cand.name;
        try {
            const maxlin::MlMatrix q(cand.matrix);
            if (!maxlin::validate_ml_matrix(q, dag)) {
                row["error"] = "not a valid ML coefficient matrix for the DAG";
                rows.push_back(std::move(row));
                continue;
            }
            switch (maxlin::gmle_compare(samples, report.b_hat, q, dag)) {
                case maxlin::GmleVerdict::CandWins: row["verdict"] = "q_loses"; break;
                case maxlin::GmleVerdict::QWins: row["verdict"] = "q_wins"; break;
                case maxlin::GmleVerdict::Tie: row["verdict"] = "tie"; break;
                case maxlin::GmleVerdict::CandInfeasible:
                    row["verdict"] = "estimate_infeasible";
                    break;
            }
            row["q_feasible"] = maxlin::gmle_feasible(samples, q, dag);
        } catch (const maxlin::Error& e) {
            row["error"] = e.what();
        }
        rows.push_back(std::move(row));
    }
    json out;
    out["candidates"] = std::move(rows);
    if (out_path.empty()) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw maxlin::MalformedDataError("cannot write " + out_path);
        f << out.dump(2) << "\n";
    }
    return 0;
}

int cmd_recover_innovations(const std::string& samples_path, const std::string& model_path,
                            const std::string& b_path, const std::string& grid_arg,
                            const std::string& out_csv) {
    Stopwatch watch;
    std::vector<maxlin::CdfEvaluator> marginals;
    std::optional<maxlin::MlMatrix> b;
    std::vector<std::string> inputs;
    if (!model_path.empty()) {
        const auto model = maxlin::io::read_model_file(model_path);
        marginals = analytic_marginals(model);
        b = maxlin::ml_matrix_from_weights(model.wd);
        inputs.push_back(model_path);
    } else if (!samples_path.empty()) {
        const auto samples = maxlin::io::read_samples_csv(samples_path);
        marginals = maxlin::empirical_marginal_cdfs(samples);
        inputs.push_back(samples_path);
    } else {
        throw maxlin::InvalidArgumentError("need --samples or --model for the marginals");
    }
    if (!b_path.empty()) {
        b = maxlin::MlMatrix(maxlin::io::read_matrix_file(b_path));
        inputs.push_back(b_path);
    }
    if (!b) {
        throw maxlin::InvalidArgumentError("need --b (or --model) for the coefficient matrix");
    }
    const auto grid = parse_grid_arg(grid_arg);
    const auto recovered = maxlin::recover_innovation_cdfs(*b, marginals, grid);

    std::ofstream out(out_csv, std::ios::binary);
    if (!out) throw maxlin::MalformedDataError("cannot write " + out_csv);
    out << "node,x,cdf,censored\n";
    for (Node i = 1; i <= b->dim(); ++i) {
        const auto& row = recovered.by_node[static_cast<std::size_t>(i - 1)];
        for (std::size_t g = 0; g < grid.size(); ++g) {
            out << i << "," << maxlin::io::format_double(grid[g]) << ","
                << maxlin::io::format_double(row[g].value) << "," << (row[g].censored ? 1 : 0)
                << "\n";
        }
    }
    out.close();
    emit_manifest(make_manifest("recover-innovations", std::nullopt, inputs, watch.seconds()),
                  out_csv, false);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Recursive max-linear models on DAGs: simulation, estimation, "
                 "structure learning, and generalized-likelihood analysis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string model_path, samples_path, dag_path, b_path, candidates_path, out_path;
    std::string edge_arg, grid_arg = "0.5:10:100", n_grid_arg;
    std::size_t n = 100, n_mc = 100000, replicates = 100, multiplicity = 2;
    std::uint64_t seed = 0;
    double p = 0.05, tie_tol = 1e-9;
    std::optional<double> prob_strict;
    Node node_i = 0, node_j = 0;
    bool project = false;

    auto* sim = app.add_subcommand("simulate", "Draw samples from a model file");
    sim->add_option("--model", model_path, "Model JSON")->required();
    sim->add_option("--n", n, "Number of observations")->required();
    sim->add_option("--seed", seed, "RNG seed")->required();
    sim->add_option("--out", out_path, "Output CSV")->required();

    auto* est = app.add_subcommand("estimate", "Estimate B from samples with the DAG known");
    est->add_option("--samples", samples_path, "Sample CSV")->required();
    est->add_option("--dag", dag_path, "DAG JSON")->required();
    est->add_option("--out", out_path, "Output report JSON")->required();

    auto* learn = app.add_subcommand("learn", "Learn ancestral structure from samples alone");
    learn->add_option("--samples", samples_path, "Sample CSV")->required();
    learn->add_option("--out", out_path, "Output JSON")->required();
    learn->add_option("--tie-tol", tie_tol, "Relative band for repeated minima");
    learn->add_option("--multiplicity", multiplicity, "Required count of minimal ratios");
    learn->add_flag("--project", project, "Project the result through the closure");

    auto* size = app.add_subcommand("sample-size", "Observations needed for exact recovery");
    size->add_option("--p", p, "Failure probability bound")->required();
    size->add_option("--prob-strict", prob_strict, "P(Y > b) if known");
    size->add_option("--model", model_path, "Model JSON for --mc mode");
    size->add_option("--edge", edge_arg, "Edge 'k,i' for --mc mode");
    size->add_option("--mc", n_mc, "Monte-Carlo draws for estimating the atom probability");
    size->add_option("--seed", seed, "RNG seed");

    auto* cons = app.add_subcommand("consistency", "Exact-recovery frequency over sample sizes");
    cons->add_option("--model", model_path, "Model JSON")->required();
    cons->add_option("--replicates", replicates, "Replicates per grid point")->required();
    cons->add_option("--n-grid", n_grid_arg, "Comma-separated sample sizes")->required();
    cons->add_option("--seed", seed, "RNG seed")->required();
    cons->add_option("--out", out_path, "Output CSV")->required();

    auto* ratios = app.add_subcommand("analyze-ratios", "Support and atoms of X_i/X_j");
    ratios->add_option("--model", model_path, "Model JSON");
    ratios->add_option("--b", b_path, "Coefficient matrix JSON");
    ratios->add_option("--i", node_i, "Numerator node i")->required();
    ratios->add_option("--j", node_j, "Denominator node j")->required();

    auto* gmle = app.add_subcommand("gmle-test", "Compare candidate matrices against b-hat");
    gmle->add_option("--samples", samples_path, "Sample CSV")->required();
    gmle->add_option("--dag", dag_path, "DAG JSON")->required();
    gmle->add_option("--candidates", candidates_path, "Candidates JSON")->required();
    gmle->add_option("--out", out_path, "Verdicts JSON (stdout when omitted)");

    auto* recover = app.add_subcommand("recover-innovations", "Innovation CDFs from B and marginals");
    recover->add_option("--samples", samples_path, "Sample CSV for empirical marginals");
    recover->add_option("--model", model_path, "Model JSON for analytic marginals");
    recover->add_option("--b", b_path, "Coefficient matrix JSON");
    recover->add_option("--grid", grid_arg, "Evaluation grid 'lo:hi:count'");
    recover->add_option("--out", out_path, "Output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(model_path, n, seed, out_path);
        if (est->parsed()) return cmd_estimate(samples_path, dag_path, out_path);
        if (learn->parsed()) {
            return cmd_learn(samples_path, out_path, tie_tol, multiplicity, project);
        }
        if (size->parsed()) {
            return cmd_sample_size(p, prob_strict, model_path, edge_arg, n_mc, seed);
        }
        if (cons->parsed()) {
            return cmd_consistency(model_path, replicates, n_grid_arg, seed, out_path);
        }
        if (ratios->parsed()) return cmd_analyze_ratios(model_path, b_path, node_i, node_j);
        if (gmle->parsed()) {
            return cmd_gmle_test(samples_path, dag_path, candidates_path, out_path);
        }
        if (recover->parsed()) {
            return cmd_recover_innovations(samples_path, model_path, b_path, grid_arg, out_path);
        }
    } catch (const maxlin::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
