#pragma once

#include "maxlin/distributions.hpp"
#include "maxlin/estimate.hpp"
#include "maxlin/model.hpp"
#include "maxlin/simulate.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace maxlin::io {

/// Parsed model file: the weighted DAG plus per-node innovations.
struct ModelFile {
    WeightedDag wd;
    InnovationSpec innovations;
};

/// Reads a model JSON file:
///   {"d": 3,
///    "edges": [{"from": 1, "to": 2, "weight": 0.5}, ...],
///    "innovations": [{"node": 1, "family": "frechet", "params": [1.0, 1.0]}, ...]}
/// Nodes without an innovations entry default to frechet(1,1).
ModelFile read_model_file(const std::string& path);
void write_model_file(const std::string& path, const ModelFile& model);

/// DAG JSON: {"d": 3, "edges": [{"from": 1, "to": 2}, ...]}. Files carrying
/// weighted edges (model files) parse too; weights are ignored.
Dag read_dag_file(const std::string& path);

/// Matrix JSON: {"d": 3, "entries": [[...], ...]} dense row-major, zeros
/// explicit so the support pattern stays visible.
NonNegMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const NonNegMatrix& m);

/// Candidate list: {"candidates": [{"name": "...", "entries": [[...], ...]}]}.
struct NamedMatrix {
    std::string name;
    NonNegMatrix matrix;
};
std::vector<NamedMatrix> read_candidates_file(const std::string& path);

/// Sample CSV: header "x1,...,xd", one row per observation, 17 significant
/// digits so values round-trip bit-exactly, LF line endings.
void write_samples_csv(const std::string& path, const SampleSet& samples);
SampleSet read_samples_csv(const std::string& path);

void write_estimate_report(const std::string& path, const EstimateReport& report);
void write_learned_matrix(const std::string& path, const LearnedMatrix& learned);

/// FNV-1a 64 digest of a file's bytes, hex-encoded. Provenance, not crypto.
std::string file_digest(const std::string& path);

/// Run provenance emitted beside every output artifact and, for randomized
/// commands, echoed to stderr.
struct RunManifest {
    std::string command;
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<std::string, std::string>> input_digests;
    std::string tool_version;
    double wall_seconds = 0.0;
};

std::string manifest_json(const RunManifest& m);
void write_manifest(const std::string& artifact_path, const RunManifest& m);

/// Serializes a double with 17 significant digits (shortest bit-exact form).
std::string format_double(double v);

} // namespace maxlin::io
