#include "flexagg/membership.hpp"

#include "flexagg/errors.hpp"
#include "flexagg/lp.hpp"
#include "flexagg/parallel.hpp"
#include "flexagg/volume.hpp"

#include <random>

namespace flexagg {

MinkowskiSumOracle::MinkowskiSumOracle(std::vector<HPolytope> polys, const Tolerances& tol,
                                       int random_directions, std::uint64_t seed)
    : polys_(std::move(polys)), tol_(tol) {
    if (polys_.empty()) throw InvalidArgument("MinkowskiSumOracle: empty list");
    const int m = polys_.front().dim();
    for (const auto& p : polys_) {
        if (p.dim() != m) throw InvalidArgument("MinkowskiSumOracle: mixed dimensions");
        boxes_.push_back(flexagg::bounding_box(p, tol));
    }
    bbox_ = box_msum(boxes_);

    std::vector<Eigen::VectorXd> dirs;
    auto add = [&](Eigen::VectorXd d) {
        d.normalize();
        for (const auto& e : dirs)
            if ((e - d).norm() < 1e-9) return;
        dirs.push_back(std::move(d));
    };
    for (const auto& p : polys_)
        for (int i = 0; i < p.rows(); ++i) add(p.A().row(i).transpose());
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    for (int i = 0; i < random_directions; ++i) {
        Eigen::VectorXd d(m);
        for (int k = 0; k < m; ++k) d(k) = normal(gen);
        if (d.norm() > 1e-12) add(std::move(d));
    }

    // Axis directions are already covered by the bounding box test.
    cut_normals_.resize(static_cast<Eigen::Index>(dirs.size()), m);
    cut_offsets_.resize(static_cast<Eigen::Index>(dirs.size()));
    for (std::size_t j = 0; j < dirs.size(); ++j) {
        double h = 0.0;
        for (const auto& p : polys_) h += support(p, dirs[j], tol);
        cut_normals_.row(static_cast<Eigen::Index>(j)) = dirs[j].transpose();
        cut_offsets_(static_cast<Eigen::Index>(j)) = h;
    }
}

bool MinkowskiSumOracle::contains(const Eigen::VectorXd& z) const {
    if (z.size() != dim()) throw InvalidArgument("MinkowskiSumOracle: dimension mismatch");
    if (!bbox_.contains(z, tol_.feasibility)) return false;
    if (((cut_normals_ * z - cut_offsets_).array() > tol_.feasibility).any()) return false;
    if (polys_.size() == 1) return flexagg::contains(polys_.front(), z, tol_.feasibility);
    if (split_contains(z)) return true;
    return lp_contains(z);
}

// Cheap inside certificate: share z - sum lo_i among the devices in proportion
// to their bounding-box widths and test every share against its polytope.
bool MinkowskiSumOracle::split_contains(const Eigen::VectorXd& z) const {
    const Eigen::VectorXd width = bbox_.edges();
    Eigen::VectorXd frac = Eigen::VectorXd::Zero(z.size());
    for (Eigen::Index k = 0; k < z.size(); ++k)
        if (width(k) > 0.0) frac(k) = (z(k) - bbox_.lo()(k)) / width(k);
    for (std::size_t i = 0; i < polys_.size(); ++i) {
        const Eigen::VectorXd x = boxes_[i].lo() + frac.cwiseProduct(boxes_[i].edges());
        if (!flexagg::contains(polys_[i], x, 0.0)) return false;
    }
    return true;
}

// x_i = lo_i + y_i with y_i >= 0 for i < n, and x_n = z - sum_{i<n} x_i.
bool MinkowskiSumOracle::lp_contains(const Eigen::VectorXd& z) const {
    const int m = dim();
    const auto n = static_cast<int>(polys_.size());
    const int vars = (n - 1) * m;
    int rows = 0;
    for (int i = 0; i < n; ++i) rows += polys_[static_cast<std::size_t>(i)].rows();
    rows += vars;   // y_i <= hi_i - lo_i

    LpProblem lp;
    lp.nonnegative = true;
    lp.objective = Eigen::VectorXd::Zero(vars);
    lp.A = Eigen::MatrixXd::Zero(rows, vars);
    lp.b.resize(rows);

    Eigen::VectorXd lo_sum = Eigen::VectorXd::Zero(m);
    int r = 0;
    for (int i = 0; i + 1 < n; ++i) {
        const auto& p = polys_[static_cast<std::size_t>(i)];
        const auto& lo = boxes_[static_cast<std::size_t>(i)].lo();
        lp.A.block(r, i * m, p.rows(), m) = p.A();
        lp.b.segment(r, p.rows()) = p.b() - p.A() * lo;
        r += p.rows();
        lo_sum += lo;
    }
    const auto& last = polys_.back();
    for (int i = 0; i + 1 < n; ++i) lp.A.block(r, i * m, last.rows(), m) = -last.A();
    lp.b.segment(r, last.rows()) = last.b() - last.A() * (z - lo_sum);
    r += last.rows();
    for (int i = 0; i + 1 < n; ++i) {
        const Eigen::VectorXd width = boxes_[static_cast<std::size_t>(i)].edges();
        for (int k = 0; k < m; ++k) {
            lp.A(r, i * m + k) = 1.0;
            lp.b(r) = width(k);
            ++r;
        }
    }
    return lp_solve(lp, tol_).status == LpStatus::optimal;
}

namespace {

void check_tiers(const MinkowskiSumOracle& oracle, std::span<const std::vector<AlignedBox>> tiers,
                 std::size_t n_samples) {
    if (n_samples == 0) throw InvalidArgument("mc_sum_coverage: zero samples");
    for (const auto& tier : tiers)
        for (const auto& b : tier)
            if (b.dim() != oracle.dim()) throw InvalidArgument("mc_sum_coverage: dimension mismatch");
}

bool in_any(std::span<const AlignedBox> boxes, const Eigen::VectorXd& x) {
    for (const auto& b : boxes)
        if (b.contains(x)) return true;
    return false;
}

// Adds this chunk's hits: counts[0] for the sum, counts[1 + j] for tier j.
void sample_chunk(const MinkowskiSumOracle& oracle, std::span<const std::vector<AlignedBox>> tiers,
                  std::size_t n_samples, std::uint64_t seed, std::size_t chunk, std::vector<std::size_t>& counts) {
    std::mt19937_64 gen = chunk_generator(seed, chunk);
    const std::size_t first = chunk * kSampleChunk;
    const std::size_t last = std::min(n_samples, first + kSampleChunk);
    std::vector<char> hit(tiers.size());
    for (std::size_t i = first; i < last; ++i) {
        const Eigen::VectorXd x = sample_in_box(oracle.bounding_box(), gen);
        bool any = false;
        for (std::size_t j = 0; j < tiers.size(); ++j) {
            hit[j] = in_any(tiers[j], x);
            any = any || hit[j];
        }
        if (!any && !oracle.contains(x)) continue;
        ++counts[0];
        for (std::size_t j = 0; j < tiers.size(); ++j) counts[j + 1] += hit[j] ? 1 : 0;
    }
}

SumCoverage finish(const std::vector<std::size_t>& counts, std::size_t n_samples) {
    SumCoverage out;
    out.samples = n_samples;
    out.sum_hits = counts[0];
    for (std::size_t j = 1; j < counts.size(); ++j)
        out.ratio.push_back(counts[0] == 0 ? 0.0 : static_cast<double>(counts[j]) / static_cast<double>(counts[0]));
    return out;
}

} // namespace

SumCoverage mc_sum_coverage(const MinkowskiSumOracle& oracle, std::span<const std::vector<AlignedBox>> tiers,
                            std::size_t n_samples, std::uint64_t seed) {
    check_tiers(oracle, tiers, n_samples);
    const std::size_t chunks = (n_samples + kSampleChunk - 1) / kSampleChunk;
    std::vector<std::vector<std::size_t>> per_chunk(chunks, std::vector<std::size_t>(tiers.size() + 1, 0));
    const auto n = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t c = 0; c < n; ++c)
        sample_chunk(oracle, tiers, n_samples, seed, static_cast<std::size_t>(c), per_chunk[static_cast<std::size_t>(c)]);
    std::vector<std::size_t> counts(tiers.size() + 1, 0);
    for (const auto& pc : per_chunk)
        for (std::size_t j = 0; j < counts.size(); ++j) counts[j] += pc[j];
    return finish(counts, n_samples);
}

SumCoverage mc_sum_coverage_serial(const MinkowskiSumOracle& oracle,
                                   std::span<const std::vector<AlignedBox>> tiers, std::size_t n_samples,
                                   std::uint64_t seed) {
    check_tiers(oracle, tiers, n_samples);
    const std::size_t chunks = (n_samples + kSampleChunk - 1) / kSampleChunk;
    std::vector<std::size_t> counts(tiers.size() + 1, 0);
    for (std::size_t c = 0; c < chunks; ++c) sample_chunk(oracle, tiers, n_samples, seed, c, counts);
    return finish(counts, n_samples);
}

} // namespace flexagg
