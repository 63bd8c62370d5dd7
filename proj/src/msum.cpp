#include "flexagg/msum.hpp"

#include "flexagg/errors.hpp"
#include "flexagg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace flexagg {

CandidatePolicy parse_candidate_policy(const std::string& name) {
    if (name == "stage0-only") return CandidatePolicy::stage0_only;
    if (name == "stage01-faces") return CandidatePolicy::stage01_faces;
    if (name == "full-product") return CandidatePolicy::full_product;
    if (name == "explicit-list") return CandidatePolicy::explicit_list;
    throw InvalidArgument("unknown candidate policy '" + name + "'");
}

const char* to_string(CandidatePolicy policy) {
    switch (policy) {
    case CandidatePolicy::stage0_only: return "stage0-only";
    case CandidatePolicy::stage01_faces: return "stage01-faces";
    case CandidatePolicy::full_product: return "full-product";
    case CandidatePolicy::explicit_list: return "explicit-list";
    }
    return "?";
}

CandidateSelection select_candidates(std::span<const DecompositionTree> trees, CandidatePolicy policy,
                                     const std::vector<std::vector<int>>& tuples, std::size_t cap) {
    if (trees.empty()) throw InvalidArgument("select_candidates: empty fleet");
    const int m = trees.front().nodes.front().box.dim();
    for (const auto& t : trees)
        if (t.nodes.empty() || t.nodes.front().box.dim() != m)
            throw InvalidArgument("select_candidates: trees differ in dimension");
    const std::size_t n = trees.size();

    CandidateSelection sel;
    sel.policy = policy;
    switch (policy) {
    case CandidatePolicy::stage0_only:
        sel.tuples.emplace_back(n, 0);
        break;
    case CandidatePolicy::stage01_faces:
        sel.tuples.emplace_back(n, 0);
        for (int sigma = 1; sigma <= 2 * m; ++sigma) {
            std::vector<int> tuple(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                const int c = trees[i].child(0, sigma);
                if (c < 0) ++sel.substitutions;
                else tuple[i] = c;
            }
            sel.tuples.push_back(std::move(tuple));
        }
        break;
    case CandidatePolicy::full_product: {
        double total = 1.0;
        for (const auto& t : trees) total *= static_cast<double>(t.nodes.size());
        if (total > static_cast<double>(cap))
            throw InvalidArgument("select_candidates: full product of " + std::to_string(std::llround(std::min(total, 1e18))) +
                                  " tuples exceeds the cap of " + std::to_string(cap));
        std::vector<int> idx(n, 0);
        for (;;) {
            sel.tuples.push_back(idx);
            std::size_t i = 0;
            while (i < n && ++idx[i] == static_cast<int>(trees[i].nodes.size())) idx[i++] = 0;
            if (i == n) break;
        }
        break;
    }
    case CandidatePolicy::explicit_list:
        for (const auto& tuple : tuples) {
            if (tuple.size() != n) throw InvalidArgument("select_candidates: tuple size differs from fleet size");
            for (std::size_t i = 0; i < n; ++i)
                if (tuple[i] < 0 || tuple[i] >= static_cast<int>(trees[i].nodes.size()))
                    throw InvalidArgument("select_candidates: node index out of range");
        }
        sel.tuples = tuples;
        break;
    }
    return sel;
}

namespace {

AlignedBox tuple_sum(std::span<const DecompositionTree> trees, const std::vector<int>& tuple) {
    Eigen::VectorXd lo = Eigen::VectorXd::Zero(trees.front().nodes.front().box.dim());
    Eigen::VectorXd hi = lo;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        const AlignedBox& b = trees[i].nodes[static_cast<std::size_t>(tuple[i])].box;
        lo += b.lo();
        hi += b.hi();
    }
    return {lo, hi};
}

void check_selection(std::span<const DecompositionTree> trees, const CandidateSelection& selection) {
    for (const auto& tuple : selection.tuples) {
        if (tuple.size() != trees.size()) throw InvalidArgument("union_msum: tuple size differs from fleet size");
        for (std::size_t i = 0; i < trees.size(); ++i)
            if (tuple[i] < 0 || tuple[i] >= static_cast<int>(trees[i].nodes.size()))
                throw InvalidArgument("union_msum: node index out of range");
    }
}

} // namespace

AggregateApprox union_msum(std::span<const DecompositionTree> trees, const CandidateSelection& selection) {
    check_selection(trees, selection);
    AggregateApprox out;
    out.boxes.resize(selection.tuples.size());
    const auto n = static_cast<std::ptrdiff_t>(selection.tuples.size());
#pragma omp parallel for
    for (std::ptrdiff_t j = 0; j < n; ++j)
        out.boxes[static_cast<std::size_t>(j)] = tuple_sum(trees, selection.tuples[static_cast<std::size_t>(j)]);
    return out;
}

AggregateApprox union_msum_serial(std::span<const DecompositionTree> trees, const CandidateSelection& selection) {
    check_selection(trees, selection);
    AggregateApprox out;
    for (const auto& tuple : selection.tuples) out.boxes.push_back(tuple_sum(trees, tuple));
    return out;
}

VPolygon hull_of_boxes_2d(const AggregateApprox& approx) {
    if (approx.boxes.empty()) throw InvalidArgument("hull_of_boxes_2d: no boxes");
    std::vector<Point2> pts;
    for (const auto& b : approx.boxes) {
        if (b.dim() != 2) throw InvalidArgument("hull_of_boxes_2d: boxes are not 2D");
        for (const Point2& p : corners_2d(b)) pts.push_back(p);
    }
    return convex_hull_2d(std::move(pts));
}

VPolygon exact_fleet_msum_2d(std::span<const HPolytope> polys, std::size_t cap, const Tolerances& tol) {
    if (polys.empty()) throw InvalidArgument("exact_fleet_msum_2d: empty fleet");
    if (polys.size() > cap) throw InvalidArgument("exact_fleet_msum_2d: fleet exceeds the size cap");
    for (const auto& p : polys)
        if (p.dim() != 2) throw InvalidArgument("exact_fleet_msum_2d: polytopes must be 2D");
    VPolygon acc = vertex_enum_2d(polys.front(), tol);
    for (std::size_t i = 1; i < polys.size(); ++i) acc = minkowski_sum_2d_exact(acc, vertex_enum_2d(polys[i], tol));
    return acc;
}

double accuracy_ratio(const AggregateApprox& approx, const VPolygon& truth) {
    if (approx.boxes.empty() && !approx.hull) return 0.0;
    const double area = approx.hull ? polygon_area(*approx.hull) : union_area_2d(approx.boxes);
    return area / polygon_area(truth);
}

UnionOptimum optimize_over_union(const Eigen::VectorXd& cost, const AggregateApprox& approx) {
    if (approx.boxes.empty()) throw InvalidArgument("optimize_over_union: no boxes");
    UnionOptimum best;
    best.value = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < approx.boxes.size(); ++j) {
        const AlignedBox& b = approx.boxes[j];
        if (b.dim() != cost.size()) throw InvalidArgument("optimize_over_union: dimension mismatch");
        Eigen::VectorXd x = b.lo();
        for (int k = 0; k < b.dim(); ++k)
            if (cost(k) < 0.0) x(k) = b.hi()(k);
        const double v = cost.dot(x);
        if (v < best.value) best = {std::move(x), v, j};
    }
    return best;
}

double minimize_over_polygon(const Eigen::Vector2d& cost, const VPolygon& poly) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& p : poly.vertices()) best = std::min(best, cost(0) * p.x + cost(1) * p.y);
    return best;
}

} // namespace flexagg
