#pragma once

#include "flexagg/box.hpp"
#include "flexagg/hpd.hpp"
#include "flexagg/membership.hpp"
#include "flexagg/polygon.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace flexagg {

enum class CandidatePolicy { stage0_only, stage01_faces, full_product, explicit_list };

CandidatePolicy parse_candidate_policy(const std::string& name);
const char* to_string(CandidatePolicy policy);

inline constexpr std::size_t kFullProductCap = 10000;

// tuples[j][i] is the node of device i's tree used by aggregate box j.
struct CandidateSelection {
    CandidatePolicy policy = CandidatePolicy::stage0_only;
    std::vector<std::vector<int>> tuples;
    std::size_t substitutions = 0;   // stage-1 face boxes replaced by the stage-0 box
};

// stage0_only: one tuple of roots. stage01_faces: the root tuple plus one tuple
// per face sigma = 1..2M, a device without a stage-1 box on that face
// contributing its root. full_product: every combination of nodes.
// explicit_list: `tuples` as given, validated.
// Throws InvalidArgument (empty fleet, mixed dims, bad node, cap exceeded).
CandidateSelection select_candidates(std::span<const DecompositionTree> trees, CandidatePolicy policy,
                                     const std::vector<std::vector<int>>& tuples = {},
                                     std::size_t cap = kFullProductCap);

struct AggregateApprox {
    std::vector<AlignedBox> boxes;
    std::optional<VPolygon> hull;
};

// One box_msum per tuple. Parallel over tuples.
AggregateApprox union_msum(std::span<const DecompositionTree> trees, const CandidateSelection& selection);
AggregateApprox union_msum_serial(std::span<const DecompositionTree> trees, const CandidateSelection& selection);

// Convex hull of every box corner. Throws InvalidArgument unless dim == 2 and
// the corners span an area.
VPolygon hull_of_boxes_2d(const AggregateApprox& approx);

// Left fold of minkowski_sum_2d_exact over the vertex-enumerated polytopes.
// Throws InvalidArgument (empty, dim != 2, fleet larger than cap).
VPolygon exact_fleet_msum_2d(std::span<const HPolytope> polys, std::size_t cap = 256,
                             const Tolerances& tol = default_tolerances());

// Area of the approximation (hull if present, else union of boxes) over the
// area of the truth. An empty approximation scores 0.
double accuracy_ratio(const AggregateApprox& approx, const VPolygon& truth);

struct AccuracyRow {
    std::string policy;
    double ratio = 0.0;
    std::optional<double> runtime_s;
    std::size_t boxes = 0;
    std::size_t substitutions = 0;
};

struct UnionOptimum {
    Eigen::VectorXd x;
    double value = 0.0;
    std::size_t box = 0;
};

// min c.x over the union of boxes; each box minimum is the corner picking lo
// where c_k > 0 and hi where c_k < 0 (lo on ties). Ties between boxes keep
// the lowest index. Throws InvalidArgument on an empty approximation.
UnionOptimum optimize_over_union(const Eigen::VectorXd& cost, const AggregateApprox& approx);

// min c.x over a 2D convex polygon (attained at a vertex).
double minimize_over_polygon(const Eigen::Vector2d& cost, const VPolygon& poly);

} // namespace flexagg
