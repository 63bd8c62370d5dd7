#pragma once

#include "flexagg/der.hpp"
#include "flexagg/hpd.hpp"
#include "flexagg/max_box.hpp"
#include "flexagg/msum.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace flexagg {

enum class DeviceType { pv_inverter, storage_inverter, load, battery };

DeviceType parse_device_type(const std::string& name);
const char* to_string(DeviceType type);

// A parameter given either as a number or as {"uniform": [lo, hi]}.
struct ParamSpec {
    double lo = 0.0;
    double hi = 0.0;
    bool random = false;
};

struct DeviceSpec {
    DeviceType type = DeviceType::storage_inverter;
    int count = 1;
    std::map<std::string, ParamSpec> params;   // ordered by name: the sampling order
};

struct ScenarioSettings {
    int N = der::kDefaultSides;
    int n_s = 1;
    double vol_threshold = 1e-6;
    RatioMode ratio_mode = RatioMode::automatic;
    PrototypeSelector prototype_selector = PrototypeSelector::median_ratio;
    int prototype_index = 0;
    // Aggregation tiers: stage0-only, stage01-faces, full-product, hull, analytic.
    std::vector<std::string> candidate_policy{"stage0-only", "stage01-faces", "hull"};
    std::size_t mc_samples = 100000;
    int subfleet_size = 5;
    int subfleets = 1;
    std::optional<std::uint64_t> seed;
};

struct Expectation {
    double value = 0.0;
    double tol = 0.0;
};

struct Scenario {
    std::vector<DeviceSpec> devices;
    ScenarioSettings settings;
    std::map<std::string, Expectation> expect;   // metric tier -> target, checked by `validate`
};

struct LoadParams {
    double p_min = 0.0;
    double p_max = 0.0;
};

using DeviceParams = std::variant<der::InverterParams, der::BatteryParams, LoadParams>;

struct Device {
    DeviceType type = DeviceType::storage_inverter;
    DeviceParams params;
};

// Strict parse: unknown fields, wrong types and unordered ranges raise
// SchemaError with a JSON path.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

nlohmann::json settings_to_json(const ScenarioSettings& settings);
ScenarioSettings settings_from_json(const nlohmann::json& doc, const std::string& path = "settings");

// Expands counts and draws every random parameter from the seed, in document
// order of devices and then alphabetical order of parameter names.
// Throws InfeasibleModel when a drawn record is invalid.
std::vector<Device> instantiate(const Scenario& scenario);

nlohmann::json device_params_to_json(const Device& device);
Device device_from_json(const nlohmann::json& doc, const std::string& path);

// Device feasible set; loads become 1D polytopes. Throws InfeasibleModel.
HPolytope device_polytope(const Device& device, int index);

} // namespace flexagg
