#pragma once

#include "flexagg/box.hpp"
#include "flexagg/max_box.hpp"
#include "flexagg/polytope.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace flexagg {

enum class RatioMode {
    prototype,   // every box keeps the prototype edge ratios
    relaxed,     // unconstrained max-volume boxes
    automatic,   // prototype in 2D, relaxed from 3D up
};

RatioMode parse_ratio_mode(const std::string& name);
const char* to_string(RatioMode mode);

// The ratios max_box should use for a polytope of dimension `dim`, or none.
std::optional<PrototypeRatios> effective_ratios(RatioMode mode, const std::optional<PrototypeRatios>& ratios,
                                                int dim);

struct HpdSettings {
    int n_s = 1;
    // A node whose box volume is below vol_threshold * vol(root box) is kept
    // but not expanded further.
    double vol_threshold = 1e-6;
    std::optional<PrototypeRatios> ratios;
};

// Faces are numbered 1..2M as (x_1 lower, x_1 upper, x_2 lower, ...).
inline int face_axis(int sigma) { return (sigma - 1) / 2; }
inline bool face_is_lower(int sigma) { return (sigma - 1) % 2 == 0; }

// Half-space on the far side of face sigma of `box`: x_k <= lo_k or x_k >= hi_k.
HalfSpace reversed_face(const AlignedBox& box, int sigma);

struct TreeNode {
    int stage = 0;
    std::vector<int> faces;   // sigma_1..sigma_s
    AlignedBox box;
    int parent = -1;
};

struct SkippedRegion {
    int parent = 0;
    int face = 0;
};

struct DecompositionTree {
    int device_id = 0;
    HpdSettings settings;
    std::vector<TreeNode> nodes;          // breadth first; nodes[0] is the root
    std::vector<SkippedRegion> skipped;   // degenerate or empty regions
    std::size_t p2_attempts = 0;          // regions formed, the root included
    bool root_degenerate = false;

    int max_stage() const;
    // Child of `parent` through face sigma, or -1.
    int child(int parent, int sigma) const;
};

// Region classification and box solver, replaceable so the staged bookkeeping
// can be exercised without geometry.
struct RegionOracle {
    std::function<RegionStatus(const HPolytope&)> classify;
    std::function<BoxFit(const HPolytope&)> solve;
};

RegionOracle geometric_oracle(const std::optional<PrototypeRatios>& ratios,
                              const Tolerances& tol = default_tolerances());

// Staged decomposition: the region of a stage-s node is its parent's region
// intersected with the reversed face it came through.
// Throws InvalidArgument (n_s < 0, ratio size mismatch), EmptyPolytope.
DecompositionTree hpd_decompose(const HPolytope& poly, const HpdSettings& settings,
                                const Tolerances& tol = default_tolerances());
DecompositionTree hpd_decompose(const HPolytope& poly, const HpdSettings& settings, const RegionOracle& oracle);

// One tree per polytope, device_id = position. Parallel over devices.
std::vector<DecompositionTree> decompose_fleet(std::span<const HPolytope> polys, const HpdSettings& settings,
                                               const Tolerances& tol = default_tolerances());
std::vector<DecompositionTree> decompose_fleet_serial(std::span<const HPolytope> polys,
                                                      const HpdSettings& settings,
                                                      const Tolerances& tol = default_tolerances());

std::vector<AlignedBox> boxes_through_stage(const DecompositionTree& tree, int stage);

enum class CoverageMethod { exact2d, montecarlo };

struct CoverageOptions {
    CoverageMethod method = CoverageMethod::exact2d;
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
};

// Fraction of poly covered by the union of the tree's boxes with stage <= s,
// for s = 0..max_stage. Throws InvalidArgument for exact2d on dim != 2 and
// DegeneratePolytope when poly has no area/volume.
std::vector<double> coverage_by_stage(const DecompositionTree& tree, const HPolytope& poly,
                                      const CoverageOptions& options = {},
                                      const Tolerances& tol = default_tolerances());
double coverage_ratio(const DecompositionTree& tree, const HPolytope& poly, const CoverageOptions& options = {},
                      const Tolerances& tol = default_tolerances());

} // namespace flexagg
