#include "flexagg/volume.hpp"

#include "flexagg/errors.hpp"
#include "flexagg/parallel.hpp"

#include <algorithm>
#include <limits>

namespace flexagg {

std::mt19937_64 chunk_generator(std::uint64_t seed, std::size_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    return std::mt19937_64(seq);
}

Eigen::VectorXd sample_in_box(const AlignedBox& box, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd x(box.dim());
    for (int k = 0; k < box.dim(); ++k) x(k) = box.lo()(k) + unit(gen) * (box.hi()(k) - box.lo()(k));
    return x;
}

namespace {

std::size_t chunk_count(std::size_t n) { return (n + kSampleChunk - 1) / kSampleChunk; }

std::size_t chunk_size(std::size_t n, std::size_t c) { return std::min(kSampleChunk, n - c * kSampleChunk); }

std::size_t count_hits(const HPolytope& poly, const AlignedBox& bbox, std::size_t n, std::uint64_t seed,
                       std::size_t chunk) {
    auto gen = chunk_generator(seed, chunk);
    std::size_t hits = 0;
    for (std::size_t s = 0, e = chunk_size(n, chunk); s < e; ++s)
        if (contains(poly, sample_in_box(bbox, gen), 0.0)) ++hits;
    return hits;
}

// Smallest stage among boxes containing x, or n_stages when none does.
int first_stage(const Eigen::VectorXd& x, std::span<const AlignedBox> boxes, std::span<const int> box_stage,
                int n_stages) {
    int best = n_stages;
    for (std::size_t i = 0; i < boxes.size(); ++i)
        if (box_stage[i] < best && boxes[i].contains(x)) best = box_stage[i];
    return best;
}

void check_coverage_args(const HPolytope& poly, std::span<const AlignedBox> boxes, std::span<const int> box_stage,
                         int n_stages, std::size_t n) {
    if (n == 0) throw InvalidArgument("mc_staged_coverage: n_samples must be >= 1");
    if (boxes.size() != box_stage.size()) throw InvalidArgument("mc_staged_coverage: stage list size mismatch");
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        if (boxes[i].dim() != poly.dim()) throw InvalidArgument("mc_staged_coverage: dimension mismatch");
        if (box_stage[i] < 0 || box_stage[i] >= n_stages)
            throw InvalidArgument("mc_staged_coverage: stage out of range");
    }
}

StagedCoverage finish(std::vector<std::size_t> per_stage, std::size_t poly_hits, std::size_t n) {
    StagedCoverage out;
    out.polytope_hits = poly_hits;
    out.samples = n;
    std::size_t running = 0;
    for (std::size_t s = 0; s + 1 < per_stage.size(); ++s) {
        running += per_stage[s];
        out.cumulative.push_back(poly_hits ? static_cast<double>(running) / poly_hits : 0.0);
    }
    return out;
}

void coverage_chunk(const HPolytope& poly, const AlignedBox& bbox, std::span<const AlignedBox> boxes,
                    std::span<const int> box_stage, int n_stages, std::size_t n, std::uint64_t seed,
                    std::size_t chunk, std::vector<std::size_t>& per_stage, std::size_t& poly_hits) {
    auto gen = chunk_generator(seed, chunk);
    for (std::size_t s = 0, e = chunk_size(n, chunk); s < e; ++s) {
        const Eigen::VectorXd x = sample_in_box(bbox, gen);
        if (!contains(poly, x, 0.0)) continue;
        ++poly_hits;
        ++per_stage[static_cast<std::size_t>(first_stage(x, boxes, box_stage, n_stages))];
    }
}

} // namespace

double mc_volume_serial(const HPolytope& poly, std::size_t n_samples, std::uint64_t seed) {
    if (n_samples == 0) throw InvalidArgument("mc_volume: n_samples must be >= 1");
    const AlignedBox bbox = bounding_box(poly);
    std::size_t hits = 0;
    for (std::size_t c = 0; c < chunk_count(n_samples); ++c) hits += count_hits(poly, bbox, n_samples, seed, c);
    return bbox.volume() * static_cast<double>(hits) / static_cast<double>(n_samples);
}

double mc_volume(const HPolytope& poly, std::size_t n_samples, std::uint64_t seed) {
    if (n_samples == 0) throw InvalidArgument("mc_volume: n_samples must be >= 1");
    const AlignedBox bbox = bounding_box(poly);
    const auto chunks = static_cast<long>(chunk_count(n_samples));
    std::size_t hits = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : hits)
    for (long c = 0; c < chunks; ++c) hits += count_hits(poly, bbox, n_samples, seed, static_cast<std::size_t>(c));
    return bbox.volume() * static_cast<double>(hits) / static_cast<double>(n_samples);
}

StagedCoverage mc_staged_coverage_serial(const HPolytope& poly, std::span<const AlignedBox> boxes,
                                         std::span<const int> box_stage, int n_stages, std::size_t n_samples,
                                         std::uint64_t seed) {
    check_coverage_args(poly, boxes, box_stage, n_stages, n_samples);
    const AlignedBox bbox = bounding_box(poly);
    std::vector<std::size_t> per_stage(static_cast<std::size_t>(n_stages) + 1, 0);
    std::size_t poly_hits = 0;
    for (std::size_t c = 0; c < chunk_count(n_samples); ++c)
        coverage_chunk(poly, bbox, boxes, box_stage, n_stages, n_samples, seed, c, per_stage, poly_hits);
    return finish(std::move(per_stage), poly_hits, n_samples);
}

StagedCoverage mc_staged_coverage(const HPolytope& poly, std::span<const AlignedBox> boxes,
                                  std::span<const int> box_stage, int n_stages, std::size_t n_samples,
                                  std::uint64_t seed) {
    check_coverage_args(poly, boxes, box_stage, n_stages, n_samples);
    const AlignedBox bbox = bounding_box(poly);
    const auto chunks = static_cast<long>(chunk_count(n_samples));
    std::vector<std::size_t> per_stage(static_cast<std::size_t>(n_stages) + 1, 0);
    std::size_t poly_hits = 0;
#pragma omp parallel
    {
        std::vector<std::size_t> local(per_stage.size(), 0);
        std::size_t local_hits = 0;
#pragma omp for schedule(dynamic) nowait
        for (long c = 0; c < chunks; ++c)
            coverage_chunk(poly, bbox, boxes, box_stage, n_stages, n_samples, seed, static_cast<std::size_t>(c),
                           local, local_hits);
#pragma omp critical
        {
            for (std::size_t s = 0; s < local.size(); ++s) per_stage[s] += local[s];
            poly_hits += local_hits;
        }
    }
    return finish(std::move(per_stage), poly_hits, n_samples);
}

} // namespace flexagg
