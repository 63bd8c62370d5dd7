#include "flexagg/hpd.hpp"

#include "flexagg/errors.hpp"
#include "flexagg/parallel.hpp"
#include "flexagg/polygon.hpp"
#include "flexagg/volume.hpp"

#include <exception>

namespace flexagg {

RatioMode parse_ratio_mode(const std::string& name) {
    if (name == "prototype") return RatioMode::prototype;
    if (name == "relaxed") return RatioMode::relaxed;
    if (name == "auto") return RatioMode::automatic;
    throw InvalidArgument("unknown ratio mode '" + name + "'");
}

const char* to_string(RatioMode mode) {
    switch (mode) {
    case RatioMode::prototype: return "prototype";
    case RatioMode::relaxed: return "relaxed";
    case RatioMode::automatic: return "auto";
    }
    return "?";
}

std::optional<PrototypeRatios> effective_ratios(RatioMode mode, const std::optional<PrototypeRatios>& ratios,
                                                int dim) {
    if (mode == RatioMode::relaxed || (mode == RatioMode::automatic && dim >= 3)) return std::nullopt;
    return ratios;
}

HalfSpace reversed_face(const AlignedBox& box, int sigma) {
    const int k = face_axis(sigma);
    if (sigma < 1 || k >= box.dim()) throw InvalidArgument("reversed_face: face index out of range");
    HalfSpace hs{Eigen::VectorXd::Zero(box.dim()), 0.0};
    if (face_is_lower(sigma)) {
        hs.normal(k) = 1.0;
        hs.offset = box.lo()(k);
    } else {
        hs.normal(k) = -1.0;
        hs.offset = -box.hi()(k);
    }
    return hs;
}

int DecompositionTree::max_stage() const {
    int s = 0;
    for (const auto& n : nodes) s = std::max(s, n.stage);
    return s;
}

int DecompositionTree::child(int parent, int sigma) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].parent == parent && !nodes[i].faces.empty() && nodes[i].faces.back() == sigma) return static_cast<int>(i);
    return -1;
}

RegionOracle geometric_oracle(const std::optional<PrototypeRatios>& ratios, const Tolerances& tol) {
    return {[tol](const HPolytope& p) { return classify(p, tol); },
            [ratios, tol](const HPolytope& p) { return max_box(p, ratios, tol); }};
}

DecompositionTree hpd_decompose(const HPolytope& poly, const HpdSettings& settings, const Tolerances& tol) {
    if (settings.ratios && settings.ratios->dim() != poly.dim())
        throw InvalidArgument("hpd_decompose: ratio count does not match dimension");
    return hpd_decompose(poly, settings, geometric_oracle(settings.ratios, tol));
}

DecompositionTree hpd_decompose(const HPolytope& poly, const HpdSettings& settings, const RegionOracle& oracle) {
    if (settings.n_s < 0) throw InvalidArgument("hpd_decompose: negative stage cap");
    if (!(settings.vol_threshold >= 0.0)) throw InvalidArgument("hpd_decompose: negative volume threshold");
    const int faces = 2 * poly.dim();

    DecompositionTree tree;
    tree.settings = settings;
    std::vector<HPolytope> regions;   // parallel to tree.nodes

    const BoxFit root = oracle.solve(poly);
    ++tree.p2_attempts;
    tree.nodes.push_back({0, {}, root.box, -1});
    regions.push_back(poly);
    tree.root_degenerate = root.degenerate;
    if (root.degenerate) return tree;
    const double min_volume = settings.vol_threshold * root.box.volume();

    std::size_t begin = 0;
    for (int s = 1; s <= settings.n_s; ++s) {
        const std::size_t end = tree.nodes.size();
        for (std::size_t i = begin; i < end; ++i) {
            if (tree.nodes[i].box.volume() < min_volume) continue;
            for (int sigma = 1; sigma <= faces; ++sigma) {
                HPolytope region = regions[i].with_row(reversed_face(tree.nodes[i].box, sigma));
                ++tree.p2_attempts;
                if (oracle.classify(region) != RegionStatus::full) {
                    tree.skipped.push_back({static_cast<int>(i), sigma});
                    continue;
                }
                const BoxFit fit = oracle.solve(region);
                if (fit.degenerate) {
                    tree.skipped.push_back({static_cast<int>(i), sigma});
                    continue;
                }
                TreeNode node{s, tree.nodes[i].faces, fit.box, static_cast<int>(i)};
                node.faces.push_back(sigma);
                tree.nodes.push_back(std::move(node));
                regions.push_back(std::move(region));
            }
        }
        begin = end;
        if (begin == tree.nodes.size()) break;
    }
    return tree;
}

std::vector<DecompositionTree> decompose_fleet(std::span<const HPolytope> polys, const HpdSettings& settings,
                                               const Tolerances& tol) {
    std::vector<DecompositionTree> out(polys.size());
    std::vector<std::exception_ptr> errors(polys.size());
    const auto n = static_cast<std::ptrdiff_t>(polys.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = hpd_decompose(polys[static_cast<std::size_t>(i)], settings, tol);
            out[static_cast<std::size_t>(i)].device_id = static_cast<int>(i);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<DecompositionTree> decompose_fleet_serial(std::span<const HPolytope> polys,
                                                      const HpdSettings& settings, const Tolerances& tol) {
    std::vector<DecompositionTree> out;
    out.reserve(polys.size());
    for (std::size_t i = 0; i < polys.size(); ++i) {
        out.push_back(hpd_decompose(polys[i], settings, tol));
        out.back().device_id = static_cast<int>(i);
    }
    return out;
}

std::vector<AlignedBox> boxes_through_stage(const DecompositionTree& tree, int stage) {
    std::vector<AlignedBox> out;
    for (const auto& n : tree.nodes)
        if (n.stage <= stage) out.push_back(n.box);
    return out;
}

std::vector<double> coverage_by_stage(const DecompositionTree& tree, const HPolytope& poly,
                                      const CoverageOptions& options, const Tolerances& tol) {
    const int stages = tree.max_stage() + 1;
    std::vector<double> out;
    if (options.method == CoverageMethod::exact2d) {
        if (poly.dim() != 2) throw InvalidArgument("coverage: exact2d needs a 2D polytope");
        const double area = polygon_area(vertex_enum_2d(poly, tol));
        for (int s = 0; s < stages; ++s) {
            const auto boxes = boxes_through_stage(tree, s);
            out.push_back(union_area_2d(boxes) / area);
        }
        return out;
    }
    if (classify(poly, tol) != RegionStatus::full) throw DegeneratePolytope("coverage: polytope has no volume");
    std::vector<AlignedBox> boxes;
    std::vector<int> stage_of;
    for (const auto& n : tree.nodes) {
        boxes.push_back(n.box);
        stage_of.push_back(n.stage);
    }
    return mc_staged_coverage(poly, boxes, stage_of, stages, options.samples, options.seed).cumulative;
}

double coverage_ratio(const DecompositionTree& tree, const HPolytope& poly, const CoverageOptions& options,
                      const Tolerances& tol) {
    return coverage_by_stage(tree, poly, options, tol).back();
}

} // namespace flexagg
