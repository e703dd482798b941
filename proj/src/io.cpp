#include "maxlin/io.hpp"

#include "maxlin/errors.hpp"

#include <json.hpp>

#include <cerrno>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace maxlin::io {

using nlohmann::json;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw MalformedDataError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw MalformedDataError(path + ": " + e.what());
    }
}

void dump_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw MalformedDataError("cannot write " + path);
    }
    out << j.dump(2) << "\n";
}

std::vector<std::pair<Node, Node>> parse_edges(const json& j, const std::string& path) {
    std::vector<std::pair<Node, Node>> edges;
    for (const auto& e : j) {
        if (!e.contains("from") || !e.contains("to")) {
            throw MalformedDataError(path + ": edge entries need 'from' and 'to'");
        }
        edges.push_back({e["from"].get<Node>(), e["to"].get<Node>()});
    }
    return edges;
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ModelFile read_model_file(const std::string& path) {
    const json j = load_json(path);
    if (!j.contains("d")) throw MalformedDataError(path + ": missing 'd'");
    const int d = j["d"].get<int>();
    std::map<std::pair<Node, Node>, double> weights;
    std::vector<std::pair<Node, Node>> edges;
    if (j.contains("edges")) {
        for (const auto& e : j["edges"]) {
            if (!e.contains("from") || !e.contains("to") || !e.contains("weight")) {
                throw MalformedDataError(path + ": edges need 'from', 'to', 'weight'");
            }
            const Node from = e["from"].get<Node>();
            const Node to = e["to"].get<Node>();
            edges.push_back({from, to});
            weights[{from, to}] = e["weight"].get<double>();
        }
    }
    if (d < 1) throw MalformedDataError(path + ": d must be >= 1");
    std::vector<Distribution> dists(static_cast<std::size_t>(d),
                                    Distribution::frechet(1.0, 1.0));
    try {
        if (j.contains("innovations")) {
            for (const auto& entry : j["innovations"]) {
                const Node node = entry.at("node").get<Node>();
                if (node < 1 || node > d) {
                    throw MalformedDataError(path + ": innovation node out of range");
                }
                const std::string family = entry.at("family").get<std::string>();
                const auto& params = entry.at("params");
                if (!params.is_array() || params.size() != 2) {
                    throw MalformedDataError(path + ": 'params' must hold two numbers");
                }
                dists[static_cast<std::size_t>(node - 1)] = Distribution::from_name(
                    family, params[0].get<double>(), params[1].get<double>());
            }
        }
        return ModelFile{WeightedDag(Dag(d, edges), weights), InnovationSpec(std::move(dists))};
    } catch (const MalformedDataError&) {
        throw;
    } catch (const Error& e) {
        throw MalformedDataError(path + ": " + e.what());
    } catch (const json::exception& e) {
        throw MalformedDataError(path + ": " + e.what());
    }
}

void write_model_file(const std::string& path, const ModelFile& model) {
    json j;
    j["d"] = model.wd.node_count();
    j["edges"] = json::array();
    for (const auto& [edge, w] : model.wd.weights()) {
        j["edges"].push_back({{"from", edge.first}, {"to", edge.second}, {"weight", w}});
    }
    j["innovations"] = json::array();
    for (Node i = 1; i <= model.innovations.dim(); ++i) {
        const auto& dist = model.innovations.node(i);
        j["innovations"].push_back({{"node", i},
                                    {"family", dist.family_name()},
                                    {"params", {dist.param1(), dist.param2()}}});
    }
    dump_json(path, j);
}

Dag read_dag_file(const std::string& path) {
    const json j = load_json(path);
    if (!j.contains("d")) throw MalformedDataError(path + ": missing 'd'");
    try {
        return Dag(j["d"].get<int>(),
                   j.contains("edges") ? parse_edges(j["edges"], path)
                                       : std::vector<std::pair<Node, Node>>{});
    } catch (const Error& e) {
        throw MalformedDataError(path + ": " + e.what());
    }
}

NonNegMatrix read_matrix_file(const std::string& path) {
    const json j = load_json(path);
    if (!j.contains("d") || !j.contains("entries")) {
        throw MalformedDataError(path + ": matrix files need 'd' and 'entries'");
    }
    const auto d = j["d"].get<std::size_t>();
    const auto& rows = j["entries"];
    if (!rows.is_array() || rows.size() != d) {
        throw MalformedDataError(path + ": 'entries' must hold d rows");
    }
    std::vector<double> entries;
    entries.reserve(d * d);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != d) {
            throw MalformedDataError(path + ": each row must hold d values");
        }
        for (const auto& v : row) entries.push_back(v.get<double>());
    }
    try {
        return NonNegMatrix(d, d, std::move(entries));
    } catch (const Error& e) {
        throw MalformedDataError(path + ": " + e.what());
    }
}

void write_matrix_file(const std::string& path, const NonNegMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    dump_json(path, json{{"d", m.rows()}, {"entries", std::move(rows)}});
}

std::vector<NamedMatrix> read_candidates_file(const std::string& path) {
    const json j = load_json(path);
    if (!j.contains("candidates") || !j["candidates"].is_array()) {
        throw MalformedDataError(path + ": missing 'candidates' array");
    }
    std::vector<NamedMatrix> out;
    int index = 0;
    for (const auto& c : j["candidates"]) {
        ++index;
        std::string name =
            c.contains("name") ? c["name"].get<std::string>() : "candidate-" + std::to_string(index);
        if (!c.contains("entries") || !c["entries"].is_array()) {
            throw MalformedDataError(path + ": candidate '" + name + "' missing 'entries'");
        }
        const auto& rows = c["entries"];
        const std::size_t d = rows.size();
        std::vector<double> entries;
        entries.reserve(d * d);
        for (const auto& row : rows) {
            if (!row.is_array() || row.size() != d) {
                throw MalformedDataError(path + ": candidate '" + name + "' is not square");
            }
            for (const auto& v : row) entries.push_back(v.get<double>());
        }
        try {
            out.push_back({std::move(name), NonNegMatrix(d, d, std::move(entries))});
        } catch (const Error& e) {
            throw MalformedDataError(path + ": " + e.what());
        }
    }
    return out;
}

void write_samples_csv(const std::string& path, const SampleSet& samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw MalformedDataError("cannot write " + path);
    }
    for (Node i = 1; i <= samples.dim(); ++i) {
        out << (i > 1 ? "," : "") << "x" << i;
    }
    out << "\n";
    for (std::size_t t = 0; t < samples.n(); ++t) {
        for (Node i = 1; i <= samples.dim(); ++i) {
            out << (i > 1 ? "," : "") << format_double(samples.value(t, i));
        }
        out << "\n";
    }
}

SampleSet read_samples_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MalformedDataError("cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw MalformedDataError(path + ": empty file");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) header.push_back(field);
    }
    const int d = static_cast<int>(header.size());
    for (int i = 0; i < d; ++i) {
        if (header[static_cast<std::size_t>(i)] != "x" + std::to_string(i + 1)) {
            throw MalformedDataError(path + ": header mismatch, expected x1..x" +
                                     std::to_string(d));
        }
    }
    std::vector<double> values;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        int count = 0;
        while (std::getline(ss, field, ',')) {
            double v = 0.0;
            const auto* begin = field.data();
            const auto* end = field.data() + field.size();
            const auto res = std::from_chars(begin, end, v);
            if (res.ec != std::errc{} || res.ptr != end) {
                throw MalformedDataError(path + ": line " + std::to_string(row) + ", field " +
                                         std::to_string(count + 1) + ": bad number '" + field +
                                         "'");
            }
            values.push_back(v);
            ++count;
        }
        if (count != d) {
            throw MalformedDataError(path + ": line " + std::to_string(row) + " has " +
                                     std::to_string(count) + " fields, expected " +
                                     std::to_string(d));
        }
    }
    if (values.empty()) {
        throw MalformedDataError(path + ": no data rows");
    }
    const std::size_t n = values.size() / static_cast<std::size_t>(d);
    return SampleSet(n, d, std::move(values));
}

void write_estimate_report(const std::string& path, const EstimateReport& report) {
    json j;
    j["d"] = report.b_hat.dim();
    j["n"] = report.n;
    json rows = json::array();
    const auto& m = report.b_hat.matrix();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    j["b_hat"] = std::move(rows);
    j["b_breve"] = json::array();
    for (const auto& [edge, v] : report.b_breve_edges) {
        j["b_breve"].push_back({{"from", edge.first},
                                {"to", edge.second},
                                {"value", v},
                                {"atom_hits", report.atom_hits.at(edge)}});
    }
    dump_json(path, j);
}

void write_learned_matrix(const std::string& path, const LearnedMatrix& learned) {
    json j;
    j["d"] = learned.b_check.rows();
    json rows = json::array();
    for (std::size_t r = 0; r < learned.b_check.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < learned.b_check.cols(); ++c) {
            row.push_back(learned.b_check(r, c));
        }
        rows.push_back(std::move(row));
    }
    j["b_check"] = std::move(rows);
    j["detected_ancestor_pairs"] = json::array();
    for (const auto& [from, to] : learned.detected_ancestor_pairs) {
        j["detected_ancestor_pairs"].push_back({{"from", from}, {"to", to}});
    }
    if (learned.projected) {
        json prows = json::array();
        const auto& p = learned.projected->matrix();
        for (std::size_t r = 0; r < p.rows(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < p.cols(); ++c) row.push_back(p(r, c));
            prows.push_back(std::move(row));
        }
        j["projected"] = std::move(prows);
    }
    dump_json(path, j);
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MalformedDataError("cannot open " + path);
    }
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize k = 0; k < in.gcount(); ++k) {
            h ^= static_cast<unsigned char>(buf[k]);
            h *= 0x100000001b3ULL;
        }
    }
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016" PRIx64, h);
    return hex;
}

std::string manifest_json(const RunManifest& m) {
    json j;
    j["command"] = m.command;
    if (m.seed) j["seed"] = *m.seed;
    j["inputs"] = json::object();
    for (const auto& [name, digest] : m.input_digests) j["inputs"][name] = digest;
    j["tool_version"] = m.tool_version;
    j["wall_seconds"] = m.wall_seconds;
    return j.dump(2);
}

void write_manifest(const std::string& artifact_path, const RunManifest& m) {
    std::ofstream out(artifact_path + ".manifest.json");
    if (!out) {
        throw MalformedDataError("cannot write manifest for " + artifact_path);
    }
    out << manifest_json(m) << "\n";
}

} // namespace maxlin::io
