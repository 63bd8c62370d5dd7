#pragma once

#include "flexagg/box.hpp"
#include "flexagg/polytope.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace flexagg {

// Membership test for the Minkowski sum of a few polytopes in R^M, used as
// ground truth where no exact sum is available. Cheap outer cuts (support
// values of the sum along fixed directions) reject most outside points; the
// rest are decided by a feasibility LP.
class MinkowskiSumOracle {
public:
    // `random_directions` extra unit directions are drawn from `seed`.
    // Throws InvalidArgument on an empty list or mixed dimensions.
    MinkowskiSumOracle(std::vector<HPolytope> polys, const Tolerances& tol = default_tolerances(),
                       int random_directions = 64, std::uint64_t seed = 0);

    int dim() const { return bbox_.dim(); }
    // Sum of the summands' bounding boxes; contains the Minkowski sum.
    const AlignedBox& bounding_box() const { return bbox_; }
    bool contains(const Eigen::VectorXd& z) const;

private:
    bool split_contains(const Eigen::VectorXd& z) const;
    bool lp_contains(const Eigen::VectorXd& z) const;

    std::vector<HPolytope> polys_;
    std::vector<AlignedBox> boxes_;
    AlignedBox bbox_;
    Eigen::MatrixXd cut_normals_;
    Eigen::VectorXd cut_offsets_;
    Tolerances tol_;
};

struct SumCoverage {
    std::vector<double> ratio;       // per tier: vol(union of tier boxes) / vol(sum)
    std::size_t sum_hits = 0;
    std::size_t samples = 0;
};

// Hit-or-miss over the sum's bounding box. Tier boxes must be inside the sum
// (inner approximations), so a point inside any of them skips the oracle.
SumCoverage mc_sum_coverage(const MinkowskiSumOracle& oracle, std::span<const std::vector<AlignedBox>> tiers,
                            std::size_t n_samples, std::uint64_t seed);
SumCoverage mc_sum_coverage_serial(const MinkowskiSumOracle& oracle,
                                   std::span<const std::vector<AlignedBox>> tiers, std::size_t n_samples,
                                   std::uint64_t seed);

} // namespace flexagg
