#include "flexagg/io.hpp"

#include "flexagg/errors.hpp"

#include <fstream>

namespace flexagg {

using nlohmann::json;

namespace {

json vector_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Eigen::VectorXd vector_from(const json& doc, const std::string& path) {
    if (!doc.is_array()) throw SchemaError(path, "expected an array of numbers");
    Eigen::VectorXd v(static_cast<Eigen::Index>(doc.size()));
    for (std::size_t i = 0; i < doc.size(); ++i) {
        if (!doc[i].is_number()) throw SchemaError(path + "[" + std::to_string(i) + "]", "expected a number");
        v(static_cast<Eigen::Index>(i)) = doc[i].get<double>();
    }
    return v;
}

const json& field(const json& doc, const char* key, const std::string& path) {
    if (!doc.is_object()) throw SchemaError(path, "expected an object");
    if (!doc.contains(key)) throw SchemaError(path + "." + key, "missing field");
    return doc.at(key);
}

const json& array_field(const json& doc, const char* key, const std::string& path) {
    const json& v = field(doc, key, path);
    if (!v.is_array()) throw SchemaError(path + "." + key, "expected an array");
    return v;
}

int int_field(const json& doc, const char* key, const std::string& path) {
    const json& v = field(doc, key, path);
    if (!v.is_number_integer()) throw SchemaError(path + "." + key, "expected an integer");
    return v.get<int>();
}

template <class F>
auto wrap(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(path, e.what());
    }
}

void expect_format(const json& doc, const char* format) {
    if (format_of(doc) != format)
        throw SchemaError("$.format", std::string("expected '") + format + "', found '" + format_of(doc) + "'");
}

} // namespace

json to_json(const AlignedBox& box) { return {{"lo", vector_json(box.lo())}, {"hi", vector_json(box.hi())}}; }

json to_json(const HPolytope& poly) {
    json rows = json::array();
    for (int i = 0; i < poly.rows(); ++i) rows.push_back(vector_json(poly.A().row(i).transpose()));
    return {{"A", rows}, {"b", vector_json(poly.b())}};
}

json to_json(const VPolygon& poly) {
    json out = json::array();
    for (const Point2& p : poly.vertices()) out.push_back({p.x, p.y});
    return out;
}

json to_json(const DecompositionTree& tree) {
    json nodes = json::array();
    for (const auto& n : tree.nodes)
        nodes.push_back({{"stage", n.stage}, {"faces", n.faces}, {"parent", n.parent}, {"lo", vector_json(n.box.lo())},
                         {"hi", vector_json(n.box.hi())}});
    json skipped = json::array();
    for (const auto& s : tree.skipped) skipped.push_back({{"parent", s.parent}, {"face", s.face}});
    json settings{{"n_s", tree.settings.n_s}, {"vol_threshold", tree.settings.vol_threshold}};
    settings["ratios"] = tree.settings.ratios ? json(tree.settings.ratios->r) : json(nullptr);
    return {{"device_id", tree.device_id}, {"settings", settings},       {"p2_attempts", tree.p2_attempts},
            {"root_degenerate", tree.root_degenerate}, {"nodes", nodes}, {"skipped", skipped}};
}

AlignedBox box_from_json(const json& doc, const std::string& path) {
    const Eigen::VectorXd lo = vector_from(field(doc, "lo", path), path + ".lo");
    const Eigen::VectorXd hi = vector_from(field(doc, "hi", path), path + ".hi");
    return wrap(path, [&] { return AlignedBox(lo, hi); });
}

HPolytope polytope_from_json(const json& doc, const std::string& path) {
    const json& rows = array_field(doc, "A", path);
    const Eigen::VectorXd b = vector_from(field(doc, "b", path), path + ".b");
    if (rows.empty() || rows.size() != static_cast<std::size_t>(b.size()))
        throw SchemaError(path, "A and b must have the same non-zero number of rows");
    const Eigen::Index m = static_cast<Eigen::Index>(rows[0].size());
    Eigen::MatrixXd A(b.size(), m);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string p = path + ".A[" + std::to_string(i) + "]";
        const Eigen::VectorXd r = vector_from(rows[i], p);
        if (r.size() != m) throw SchemaError(p, "row length differs from the first row");
        A.row(static_cast<Eigen::Index>(i)) = r.transpose();
    }
    return wrap(path, [&] { return HPolytope(A, b); });
}

VPolygon polygon_from_json(const json& doc, const std::string& path) {
    if (!doc.is_array()) throw SchemaError(path, "expected an array of [x, y] points");
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const Eigen::VectorXd v = vector_from(doc[i], path + "[" + std::to_string(i) + "]");
        if (v.size() != 2) throw SchemaError(path + "[" + std::to_string(i) + "]", "expected [x, y]");
        pts.push_back({v(0), v(1)});
    }
    return wrap(path, [&] { return VPolygon(pts); });
}

DecompositionTree tree_from_json(const json& doc, const std::string& path) {
    DecompositionTree t;
    t.device_id = int_field(doc, "device_id", path);
    const json& s = field(doc, "settings", path);
    t.settings.n_s = int_field(s, "n_s", path + ".settings");
    const json& vt = field(s, "vol_threshold", path + ".settings");
    if (!vt.is_number()) throw SchemaError(path + ".settings.vol_threshold", "expected a number");
    t.settings.vol_threshold = vt.get<double>();
    const json& r = field(s, "ratios", path + ".settings");
    if (!r.is_null()) {
        const Eigen::VectorXd rv = vector_from(r, path + ".settings.ratios");
        t.settings.ratios = PrototypeRatios{std::vector<double>(rv.data(), rv.data() + rv.size())};
    }
    t.p2_attempts = static_cast<std::size_t>(int_field(doc, "p2_attempts", path));
    const json& rd = field(doc, "root_degenerate", path);
    if (!rd.is_boolean()) throw SchemaError(path + ".root_degenerate", "expected a boolean");
    t.root_degenerate = rd.get<bool>();

    const json& nodes = array_field(doc, "nodes", path);
    if (nodes.empty()) throw SchemaError(path + ".nodes", "a tree has at least its root");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string p = path + ".nodes[" + std::to_string(i) + "]";
        TreeNode n;
        n.stage = int_field(nodes[i], "stage", p);
        n.parent = int_field(nodes[i], "parent", p);
        const json& faces = array_field(nodes[i], "faces", p);
        for (const auto& f : faces) {
            if (!f.is_number_integer()) throw SchemaError(p + ".faces", "expected integers");
            n.faces.push_back(f.get<int>());
        }
        n.box = box_from_json(nodes[i], p);
        if (n.parent >= static_cast<int>(i) || (i > 0 && n.parent < 0) || (i == 0 && n.parent != -1))
            throw SchemaError(p + ".parent", "parent must be an earlier node");
        if (static_cast<int>(n.faces.size()) != n.stage) throw SchemaError(p + ".faces", "length must equal stage");
        t.nodes.push_back(std::move(n));
    }
    for (const auto& sk : array_field(doc, "skipped", path))
        t.skipped.push_back({int_field(sk, "parent", path + ".skipped"), int_field(sk, "face", path + ".skipped")});
    return t;
}

namespace {

json fleet_fields(const PolytopeBundle& b) {
    json devices = json::array();
    for (std::size_t i = 0; i < b.devices.size(); ++i) {
        json d = device_params_to_json(b.devices[i]);
        d["polytope"] = to_json(b.polytopes[i]);
        devices.push_back(std::move(d));
    }
    json expect = json::object();
    for (const auto& [k, e] : b.expect) expect[k] = {{"value", e.value}, {"tol", e.tol}};
    return {{"settings", settings_to_json(b.settings)}, {"expect", expect}, {"devices", devices}};
}

PolytopeBundle fleet_from(const json& doc) {
    PolytopeBundle b;
    b.settings = settings_from_json(field(doc, "settings", "$"), "$.settings");
    const json& expect = field(doc, "expect", "$");
    if (!expect.is_object()) throw SchemaError("$.expect", "expected an object");
    for (const auto& [k, e] : expect.items()) {
        const json& v = field(e, "value", "$.expect." + k);
        const json& t = field(e, "tol", "$.expect." + k);
        if (!v.is_number() || !t.is_number()) throw SchemaError("$.expect." + k, "expected numbers");
        b.expect[k] = {v.get<double>(), t.get<double>()};
    }
    const json& devices = array_field(doc, "devices", "$");
    for (std::size_t i = 0; i < devices.size(); ++i) {
        const std::string p = "$.devices[" + std::to_string(i) + "]";
        json params = devices[i];
        if (!params.is_object()) throw SchemaError(p, "expected an object");
        const json poly = field(params, "polytope", p);
        params.erase("polytope");
        b.devices.push_back(device_from_json(params, p));
        b.polytopes.push_back(polytope_from_json(poly, p + ".polytope"));
    }
    return b;
}

} // namespace

json to_json(const PolytopeBundle& bundle) {
    json out{{"format", kPolytopesFormat}};
    out.update(fleet_fields(bundle));
    return out;
}

json to_json(const TreeBundle& bundle) {
    json out{{"format", kTreesFormat}};
    out.update(fleet_fields(bundle.fleet));
    out["prototype_ratios"] = bundle.ratios ? json(bundle.ratios->r) : json(nullptr);
    json trees = json::array();
    for (const auto& t : bundle.trees) trees.push_back(to_json(t));
    out["trees"] = trees;
    return out;
}

json to_json(const ApproxBundle& bundle) {
    json tiers = json::array();
    for (const auto& t : bundle.tiers) {
        json boxes = json::array();
        for (const auto& b : t.approx.boxes) boxes.push_back(to_json(b));
        json tier{{"policy", t.policy}, {"boxes", boxes}, {"substitutions", t.substitutions}};
        tier["hull"] = t.approx.hull ? to_json(*t.approx.hull) : json(nullptr);
        tiers.push_back(std::move(tier));
    }
    json out{{"format", kApproxFormat}, {"dim", bundle.dim}, {"tiers", tiers}};
    out["truth"] = bundle.truth ? to_json(*bundle.truth) : json(nullptr);
    return out;
}

PolytopeBundle polytope_bundle_from_json(const json& doc) {
    expect_format(doc, kPolytopesFormat);
    return fleet_from(doc);
}

TreeBundle tree_bundle_from_json(const json& doc) {
    expect_format(doc, kTreesFormat);
    TreeBundle b;
    b.fleet = fleet_from(doc);
    const json& r = field(doc, "prototype_ratios", "$");
    if (!r.is_null()) {
        const Eigen::VectorXd rv = vector_from(r, "$.prototype_ratios");
        b.ratios = PrototypeRatios{std::vector<double>(rv.data(), rv.data() + rv.size())};
    }
    const json& trees = array_field(doc, "trees", "$");
    for (std::size_t i = 0; i < trees.size(); ++i)
        b.trees.push_back(tree_from_json(trees[i], "$.trees[" + std::to_string(i) + "]"));
    if (b.trees.size() != b.fleet.devices.size()) throw SchemaError("$.trees", "one tree per device expected");
    return b;
}

ApproxBundle approx_bundle_from_json(const json& doc) {
    expect_format(doc, kApproxFormat);
    ApproxBundle b;
    b.dim = int_field(doc, "dim", "$");
    const json& tiers = array_field(doc, "tiers", "$");
    for (std::size_t i = 0; i < tiers.size(); ++i) {
        const std::string p = "$.tiers[" + std::to_string(i) + "]";
        ApproxTier t;
        const json& name = field(tiers[i], "policy", p);
        if (!name.is_string()) throw SchemaError(p + ".policy", "expected a string");
        t.policy = name.get<std::string>();
        t.substitutions = static_cast<std::size_t>(int_field(tiers[i], "substitutions", p));
        const json& boxes = array_field(tiers[i], "boxes", p);
        for (std::size_t j = 0; j < boxes.size(); ++j)
            t.approx.boxes.push_back(box_from_json(boxes[j], p + ".boxes[" + std::to_string(j) + "]"));
        const json& hull = field(tiers[i], "hull", p);
        if (!hull.is_null()) t.approx.hull = polygon_from_json(hull, p + ".hull");
        b.tiers.push_back(std::move(t));
    }
    const json& truth = field(doc, "truth", "$");
    if (!truth.is_null()) b.truth = polygon_from_json(truth, "$.truth");
    return b;
}

std::string format_of(const json& doc) {
    if (doc.is_object() && doc.contains("format") && doc.at("format").is_string())
        return doc.at("format").get<std::string>();
    return "";
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path, "cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path, e.what());
    }
}

void write_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << doc.dump(1) << '\n';
}

} // namespace flexagg
