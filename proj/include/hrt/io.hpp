#pragma once

#include <json.hpp>

#include "hrt/ramsey.hpp"

namespace hrt {

using Json = nlohmann::ordered_json;

/// Envelope of every persisted artifact. Payloads hold only objects, arrays,
/// strings and integers; probabilities travel as "p/q" strings.
struct Document {
    int format_version = 1;
    std::string kind;  // hypergraph | complex | coloring | report
    Json payload;
};

/// Strict parse: rejects floats, unknown keys and schema violations;
/// syntax errors carry line/column.
Document parse_document(const std::string& text);

/// Canonical text: fixed key order, edges sorted by (index, locals),
/// palette entries in canonical index order, two-space indent.
std::string serialize_document(const Document& doc);

Document make_document(const std::string& kind, Json payload);

Json hypergraph_to_json(const ColoredHypergraph& G);
ColoredHypergraph hypergraph_from_json(const Json& payload);
Json uniform_to_json(const UniformHypergraph& H);
UniformHypergraph uniform_from_json(const Json& payload);
Json complex_to_json(const Complex& S);
Complex complex_from_json(const Json& payload);
Json coloring_to_json(const ColoringAssignment& col);
ColoringAssignment coloring_from_json(const Json& payload);
Json witness_to_json(const RegularityWitness& w);
RegularityWitness witness_from_json(const Json& payload);

Json total_color_to_json(const TotalColor& tc);
TotalColor total_color_from_json(const Json& j);

Json to_json(const DensityReport& report);
Json to_json(const ExceptionalReport& report);
Json to_json(const Xx11aCheck& check);
Json to_json(const Xx15dCheck& check);
Json to_json(const BetaReport& report);
Json to_json(const LemmaReport& report);
Json to_json(const CorollaryReport& report);
Json to_json(const RamseyResult& result);
Json to_json(const PipelineReport& report);

struct GenConfig {
    int r = 2;
    int k = 2;
    std::vector<int> class_sizes;
    std::vector<int> palette_sizes;  // per level 1..k
    std::uint64_t seed = 0;
};

/// Every edge of every index gets an independent uniform palette color;
/// identical output for identical config.
ColoredHypergraph random_instance(const GenConfig& config);

struct ExperimentConfig {
    std::uint64_t seed = 0;
    int samples = 0;
    GenConfig shape;
    std::vector<Rat> eta;
    std::vector<Rat> rho;
    std::uint64_t pattern_budget = 200;
    int vertex_cap = 6;
    std::vector<std::string> checks;  // normalization | chain-rule | xx11a | beta | counting
};

ExperimentConfig experiment_config_from_json(const Json& j);

/// Drives the exact verifiers over seeded random instances and aggregates
/// pass rates, worst discrepancies and eta-threshold probes.
Json run_experiment(const ExperimentConfig& config);

}  // namespace hrt
