#pragma once

#include "flexagg/box.hpp"
#include "flexagg/hpd.hpp"
#include "flexagg/msum.hpp"
#include "flexagg/polygon.hpp"
#include "flexagg/polytope.hpp"
#include "flexagg/scenario.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flexagg {

inline constexpr const char* kPolytopesFormat = "flexagg.polytopes/1";
inline constexpr const char* kTreesFormat = "flexagg.trees/1";
inline constexpr const char* kApproxFormat = "flexagg.approx/1";

nlohmann::json to_json(const AlignedBox& box);
nlohmann::json to_json(const HPolytope& poly);
nlohmann::json to_json(const VPolygon& poly);
nlohmann::json to_json(const DecompositionTree& tree);

// Readers throw SchemaError(path, message).
AlignedBox box_from_json(const nlohmann::json& doc, const std::string& path);
HPolytope polytope_from_json(const nlohmann::json& doc, const std::string& path);
VPolygon polygon_from_json(const nlohmann::json& doc, const std::string& path);
DecompositionTree tree_from_json(const nlohmann::json& doc, const std::string& path);

struct PolytopeBundle {
    ScenarioSettings settings;
    std::map<std::string, Expectation> expect;
    std::vector<Device> devices;
    std::vector<HPolytope> polytopes;
};

struct TreeBundle {
    PolytopeBundle fleet;
    std::optional<PrototypeRatios> ratios;   // prototype used for the decomposition
    std::vector<DecompositionTree> trees;
};

struct ApproxTier {
    std::string policy;
    AggregateApprox approx;
    std::size_t substitutions = 0;
};

struct ApproxBundle {
    int dim = 0;
    std::vector<ApproxTier> tiers;
    std::optional<VPolygon> truth;   // exact 2D sum when available
};

nlohmann::json to_json(const PolytopeBundle& bundle);
nlohmann::json to_json(const TreeBundle& bundle);
nlohmann::json to_json(const ApproxBundle& bundle);
PolytopeBundle polytope_bundle_from_json(const nlohmann::json& doc);
TreeBundle tree_bundle_from_json(const nlohmann::json& doc);
ApproxBundle approx_bundle_from_json(const nlohmann::json& doc);

// "format" field of a document, or "" when missing.
std::string format_of(const nlohmann::json& doc);

nlohmann::json read_json_file(const std::string& path);
// Pretty-printed with a trailing newline; throws Error when the file cannot be written.
void write_json_file(const std::string& path, const nlohmann::json& doc);

} // namespace flexagg
