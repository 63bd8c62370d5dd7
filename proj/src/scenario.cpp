#include "flexagg/scenario.hpp"

#include "flexagg/errors.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>

namespace flexagg {

using nlohmann::json;

DeviceType parse_device_type(const std::string& name) {
    if (name == "pv-inverter") return DeviceType::pv_inverter;
    if (name == "storage-inverter") return DeviceType::storage_inverter;
    if (name == "load") return DeviceType::load;
    if (name == "battery") return DeviceType::battery;
    throw InvalidArgument("unknown device type '" + name + "'");
}

const char* to_string(DeviceType type) {
    switch (type) {
    case DeviceType::pv_inverter: return "pv-inverter";
    case DeviceType::storage_inverter: return "storage-inverter";
    case DeviceType::load: return "load";
    case DeviceType::battery: return "battery";
    }
    return "?";
}

namespace {

struct ParamRule {
    std::string name;
    bool required = false;
    double fallback = 0.0;
    bool integer = false;   // integers may not be random
};

const std::vector<ParamRule>& rules_for(DeviceType type) {
    static const std::vector<ParamRule> pv{
        {"N", false, 0.0, true}, {"S", false, 1.0}, {"p_max", true}, {"theta", false, std::numbers::pi / 2}};
    static const std::vector<ParamRule> storage{
        {"N", false, 0.0, true}, {"S", false, 1.0}, {"p_max", true}, {"p_min", true}};
    static const std::vector<ParamRule> load{{"p_max", true}, {"p_min", true}};
    static const std::vector<ParamRule> battery{{"a", true},       {"e0", true},    {"gamma", true},
                                                {"horizon", true, 0.0, true},      {"p_max", true},
                                                {"p_min", false, 0.0}};
    switch (type) {
    case DeviceType::pv_inverter: return pv;
    case DeviceType::storage_inverter: return storage;
    case DeviceType::load: return load;
    case DeviceType::battery: return battery;
    }
    return load;
}

double number_at(const json& v, const std::string& path) {
    if (!v.is_number()) throw SchemaError(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw SchemaError(path, "expected a finite number");
    return x;
}

long integer_at(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
    return v.get<long>();
}

std::string string_at(const json& v, const std::string& path) {
    if (!v.is_string()) throw SchemaError(path, "expected a string");
    return v.get<std::string>();
}

void require_object(const json& v, const std::string& path) {
    if (!v.is_object()) throw SchemaError(path, "expected an object");
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) throw SchemaError(path + "." + key, "unknown field");
}

ParamSpec parse_param(const json& v, const ParamRule& rule, const std::string& path) {
    if (v.is_object()) {
        reject_unknown(v, {"uniform"}, path);
        if (!v.contains("uniform")) throw SchemaError(path, "distribution object needs 'uniform'");
        if (rule.integer) throw SchemaError(path, "integer parameter cannot be random");
        const json& u = v.at("uniform");
        if (!u.is_array() || u.size() != 2) throw SchemaError(path + ".uniform", "expected [lo, hi]");
        ParamSpec p{number_at(u[0], path + ".uniform[0]"), number_at(u[1], path + ".uniform[1]"), true};
        if (p.lo > p.hi) throw SchemaError(path + ".uniform", "lo must not exceed hi");
        return p;
    }
    if (rule.integer) {
        const double x = static_cast<double>(integer_at(v, path));
        return {x, x, false};
    }
    const double x = number_at(v, path);
    return {x, x, false};
}

DeviceSpec parse_device(const json& d, const std::string& path) {
    require_object(d, path);
    if (!d.contains("type")) throw SchemaError(path + ".type", "missing field");
    DeviceSpec spec;
    try {
        spec.type = parse_device_type(string_at(d.at("type"), path + ".type"));
    } catch (const InvalidArgument& e) {
        throw SchemaError(path + ".type", e.what());
    }
    const auto& rules = rules_for(spec.type);
    std::set<std::string> allowed{"type", "count", "name"};
    for (const auto& r : rules) allowed.insert(r.name);
    reject_unknown(d, allowed, path);

    if (d.contains("count")) {
        const long c = integer_at(d.at("count"), path + ".count");
        if (c < 1) throw SchemaError(path + ".count", "must be at least 1");
        spec.count = static_cast<int>(c);
    }
    if (d.contains("name")) string_at(d.at("name"), path + ".name");
    for (const auto& r : rules) {
        if (d.contains(r.name)) spec.params[r.name] = parse_param(d.at(r.name), r, path + "." + r.name);
        else if (r.required) throw SchemaError(path + "." + r.name, "missing field");
    }
    return spec;
}

std::uint64_t draw_seed(const ScenarioSettings& s) { return s.seed.value_or(0); }

} // namespace

ScenarioSettings settings_from_json(const json& doc, const std::string& path) {
    require_object(doc, path);
    reject_unknown(doc,
                   {"N", "n_s", "vol_threshold", "ratio_mode", "prototype_selector", "prototype_index",
                    "candidate_policy", "mc_samples", "subfleet_size", "subfleets", "seed"},
                   path);
    ScenarioSettings s;
    auto positive_int = [&](const char* key, long min) {
        const long v = integer_at(doc.at(key), path + "." + key);
        if (v < min) throw SchemaError(path + "." + key, "must be at least " + std::to_string(min));
        return v;
    };
    if (doc.contains("N")) {
        s.N = static_cast<int>(positive_int("N", 4));
        if (s.N % 2 != 0) throw SchemaError(path + ".N", "must be even");
    }
    if (doc.contains("n_s")) s.n_s = static_cast<int>(positive_int("n_s", 0));
    if (doc.contains("vol_threshold")) {
        s.vol_threshold = number_at(doc.at("vol_threshold"), path + ".vol_threshold");
        if (s.vol_threshold < 0.0) throw SchemaError(path + ".vol_threshold", "must be non-negative");
    }
    try {
        if (doc.contains("ratio_mode"))
            s.ratio_mode = parse_ratio_mode(string_at(doc.at("ratio_mode"), path + ".ratio_mode"));
    } catch (const InvalidArgument& e) {
        throw SchemaError(path + ".ratio_mode", e.what());
    }
    try {
        if (doc.contains("prototype_selector"))
            s.prototype_selector =
                parse_prototype_selector(string_at(doc.at("prototype_selector"), path + ".prototype_selector"));
    } catch (const InvalidArgument& e) {
        throw SchemaError(path + ".prototype_selector", e.what());
    }
    if (doc.contains("prototype_index")) s.prototype_index = static_cast<int>(positive_int("prototype_index", 0));
    if (doc.contains("candidate_policy")) {
        const json& list = doc.at("candidate_policy");
        const std::string p = path + ".candidate_policy";
        if (!list.is_array()) throw SchemaError(p, "expected a list of policy names");
        s.candidate_policy.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string item = p + "[" + std::to_string(i) + "]";
            const std::string name = string_at(list[i], item);
            if (name != "stage0-only" && name != "stage01-faces" && name != "full-product" && name != "hull" &&
                name != "analytic")
                throw SchemaError(item, "unknown policy '" + name + "'");
            s.candidate_policy.push_back(name);
        }
    }
    if (doc.contains("mc_samples")) s.mc_samples = static_cast<std::size_t>(positive_int("mc_samples", 1));
    if (doc.contains("subfleet_size")) s.subfleet_size = static_cast<int>(positive_int("subfleet_size", 1));
    if (doc.contains("subfleets")) s.subfleets = static_cast<int>(positive_int("subfleets", 1));
    if (doc.contains("seed")) s.seed = static_cast<std::uint64_t>(positive_int("seed", 0));
    return s;
}

json settings_to_json(const ScenarioSettings& s) {
    json out{{"N", s.N},
             {"n_s", s.n_s},
             {"vol_threshold", s.vol_threshold},
             {"ratio_mode", to_string(s.ratio_mode)},
             {"prototype_selector", to_string(s.prototype_selector)},
             {"prototype_index", s.prototype_index},
             {"candidate_policy", s.candidate_policy},
             {"mc_samples", s.mc_samples},
             {"subfleet_size", s.subfleet_size},
             {"subfleets", s.subfleets}};
    if (s.seed) out["seed"] = *s.seed;
    return out;
}

Scenario parse_scenario(const json& doc) {
    require_object(doc, "$");
    reject_unknown(doc, {"devices", "settings", "expect", "description"}, "$");
    if (doc.contains("description")) string_at(doc.at("description"), "$.description");
    if (!doc.contains("devices")) throw SchemaError("$.devices", "missing field");
    const json& devices = doc.at("devices");
    if (!devices.is_array() || devices.empty()) throw SchemaError("$.devices", "expected a non-empty list");

    Scenario sc;
    bool random = false;
    for (std::size_t i = 0; i < devices.size(); ++i) {
        sc.devices.push_back(parse_device(devices[i], "$.devices[" + std::to_string(i) + "]"));
        for (const auto& [_, p] : sc.devices.back().params) random = random || p.random;
    }
    if (doc.contains("settings")) sc.settings = settings_from_json(doc.at("settings"), "$.settings");
    if (random && !sc.settings.seed) throw SchemaError("$.settings.seed", "required when a parameter is random");

    if (doc.contains("expect")) {
        const json& ex = doc.at("expect");
        require_object(ex, "$.expect");
        for (const auto& [key, v] : ex.items()) {
            const std::string p = "$.expect." + key;
            require_object(v, p);
            reject_unknown(v, {"value", "tol"}, p);
            if (!v.contains("value") || !v.contains("tol")) throw SchemaError(p, "needs 'value' and 'tol'");
            sc.expect[key] = {number_at(v.at("value"), p + ".value"), number_at(v.at("tol"), p + ".tol")};
        }
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path, "cannot open file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path, e.what());
    }
    return parse_scenario(doc);
}

std::vector<Device> instantiate(const Scenario& scenario) {
    std::mt19937_64 gen(draw_seed(scenario.settings));
    std::vector<Device> out;
    for (const auto& spec : scenario.devices) {
        for (int c = 0; c < spec.count; ++c) {
            std::map<std::string, double> v;
            for (const auto& [name, p] : spec.params) {
                if (p.random) v[name] = std::uniform_real_distribution<double>(p.lo, p.hi)(gen);
                else v[name] = p.lo;
            }
            for (const auto& r : rules_for(spec.type))
                if (!v.count(r.name)) v[r.name] = r.fallback;

            Device d;
            d.type = spec.type;
            switch (spec.type) {
            case DeviceType::pv_inverter:
                d.params = der::InverterParams{v["S"], 0.0, v["p_max"], v["theta"],
                                               v["N"] > 0 ? static_cast<int>(v["N"]) : scenario.settings.N};
                break;
            case DeviceType::storage_inverter:
                d.params = der::InverterParams{v["S"], v["p_min"], v["p_max"], std::nullopt,
                                               v["N"] > 0 ? static_cast<int>(v["N"]) : scenario.settings.N};
                break;
            case DeviceType::load:
                d.params = LoadParams{v["p_min"], v["p_max"]};
                break;
            case DeviceType::battery:
                d.params = der::BatteryParams{v["p_min"], v["p_max"], v["a"],
                                              v["gamma"], v["e0"],    static_cast<int>(v["horizon"])};
                break;
            }
            out.push_back(std::move(d));
        }
    }
    return out;
}

json device_params_to_json(const Device& d) {
    json out{{"type", to_string(d.type)}};
    if (const auto* p = std::get_if<der::InverterParams>(&d.params)) {
        out["S"] = p->S;
        out["N"] = p->N;
        out["p_max"] = p->p_max;
        if (p->theta) out["theta"] = *p->theta;
        else out["p_min"] = p->p_min;
    } else if (const auto* b = std::get_if<der::BatteryParams>(&d.params)) {
        out["p_min"] = b->p_min;
        out["p_max"] = b->p_max;
        out["a"] = b->a;
        out["gamma"] = b->gamma;
        out["e0"] = b->e0;
        out["horizon"] = b->horizon;
    } else {
        const auto& l = std::get<LoadParams>(d.params);
        out["p_min"] = l.p_min;
        out["p_max"] = l.p_max;
    }
    return out;
}

Device device_from_json(const json& doc, const std::string& path) {
    const DeviceSpec spec = parse_device(doc, path);
    for (const auto& [name, p] : spec.params)
        if (p.random) throw SchemaError(path + "." + name, "instantiated device cannot be random");
    if (spec.count != 1) throw SchemaError(path + ".count", "instantiated device must have count 1");
    Scenario one;
    one.devices.push_back(spec);
    return instantiate(one).front();
}

HPolytope device_polytope(const Device& device, int index) {
    try {
        if (const auto* p = std::get_if<der::InverterParams>(&device.params)) return der::inverter_polytope(*p);
        if (const auto* b = std::get_if<der::BatteryParams>(&device.params)) return der::battery_polytope(*b);
        const auto& l = std::get<LoadParams>(device.params);
        return to_hpolytope(der::load_interval(l.p_min, l.p_max));
    } catch (const InvalidArgument& e) {
        throw InfeasibleModel(index, e.what());
    } catch (const EmptyPolytope& e) {
        throw InfeasibleModel(index, e.what());
    }
}

} // namespace flexagg
