#pragma once

#include "flexagg/box.hpp"
#include "flexagg/polytope.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace flexagg {

// Samples are drawn in fixed-size chunks, each from its own generator seeded by
// (seed, chunk index). Results therefore do not depend on the thread count and
// the parallel kernels agree bit-for-bit with their serial references.
inline constexpr std::size_t kSampleChunk = 4096;

std::mt19937_64 chunk_generator(std::uint64_t seed, std::size_t chunk);

// Uniform point in `box`.
Eigen::VectorXd sample_in_box(const AlignedBox& box, std::mt19937_64& gen);

// vol(bounding box) * hits / n_samples. Throws EmptyPolytope, InvalidArgument (n_samples == 0).
double mc_volume(const HPolytope& poly, std::size_t n_samples, std::uint64_t seed);
double mc_volume_serial(const HPolytope& poly, std::size_t n_samples, std::uint64_t seed);

struct StagedCoverage {
    std::vector<double> cumulative;  // fraction of the polytope covered by boxes of stage <= s
    std::size_t polytope_hits = 0;
    std::size_t samples = 0;
};

// Hit-or-miss estimate of how much of `poly` the union of `boxes` covers,
// split by the stage each box belongs to (box_stage[i] in [0, n_stages)).
StagedCoverage mc_staged_coverage(const HPolytope& poly, std::span<const AlignedBox> boxes,
                                  std::span<const int> box_stage, int n_stages, std::size_t n_samples,
                                  std::uint64_t seed);
StagedCoverage mc_staged_coverage_serial(const HPolytope& poly, std::span<const AlignedBox> boxes,
                                         std::span<const int> box_stage, int n_stages,
                                         std::size_t n_samples, std::uint64_t seed);

} // namespace flexagg
