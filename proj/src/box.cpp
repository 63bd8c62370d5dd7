#include "flexagg/box.hpp"

#include "flexagg/errors.hpp"
#include "flexagg/polygon.hpp"

#include <algorithm>
#include <utility>

namespace flexagg {

AlignedBox::AlignedBox(Eigen::VectorXd lo, Eigen::VectorXd hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size() || lo_.size() == 0)
        throw InvalidArgument("AlignedBox: lo/hi size mismatch");
    if ((lo_.array() > hi_.array()).any()) throw InvalidArgument("AlignedBox: lo > hi");
}

bool AlignedBox::contains(const Eigen::VectorXd& x, double tol) const {
    if (x.size() != lo_.size()) throw InvalidArgument("AlignedBox::contains: dimension mismatch");
    return ((x.array() >= lo_.array() - tol) && (x.array() <= hi_.array() + tol)).all();
}

std::vector<Eigen::VectorXd> AlignedBox::corners() const {
    const int m = dim();
    std::vector<Eigen::VectorXd> out;
    out.reserve(std::size_t{1} << m);
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        Eigen::VectorXd c(m);
        for (int k = 0; k < m; ++k) c(k) = (mask >> k) & 1u ? hi_(k) : lo_(k);
        out.push_back(std::move(c));
    }
    return out;
}

AlignedBox box_msum(std::span<const AlignedBox> boxes) {
    if (boxes.empty()) throw InvalidArgument("box_msum: empty list");
    Eigen::VectorXd lo = boxes.front().lo();
    Eigen::VectorXd hi = boxes.front().hi();
    for (std::size_t i = 1; i < boxes.size(); ++i) {
        if (boxes[i].dim() != lo.size()) throw InvalidArgument("box_msum: dimension mismatch");
        lo += boxes[i].lo();
        hi += boxes[i].hi();
    }
    return AlignedBox(std::move(lo), std::move(hi));
}

std::vector<Point2> corners_2d(const AlignedBox& box) {
    if (box.dim() != 2) throw InvalidArgument("corners_2d: box is not 2D");
    const auto& l = box.lo();
    const auto& h = box.hi();
    return {{l(0), l(1)}, {h(0), l(1)}, {h(0), h(1)}, {l(0), h(1)}};
}

double union_area_2d(std::span<const AlignedBox> boxes) {
    std::vector<double> xs;
    for (const auto& b : boxes) {
        if (b.dim() != 2) throw InvalidArgument("union_area_2d: box is not 2D");
        xs.push_back(b.lo()(0));
        xs.push_back(b.hi()(0));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    double area = 0.0;
    std::vector<std::pair<double, double>> spans;
    for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
        const double x0 = xs[s], x1 = xs[s + 1];
        const double mid = 0.5 * (x0 + x1);
        spans.clear();
        for (const auto& b : boxes)
            if (b.lo()(0) <= mid && mid <= b.hi()(0)) spans.emplace_back(b.lo()(1), b.hi()(1));
        if (spans.empty()) continue;
        std::sort(spans.begin(), spans.end());
        double covered = 0.0;
        double cur_lo = spans.front().first, cur_hi = spans.front().second;
        for (const auto& [lo, hi] : spans) {
            if (lo > cur_hi) {
                covered += cur_hi - cur_lo;
                cur_lo = lo;
                cur_hi = hi;
            } else {
                cur_hi = std::max(cur_hi, hi);
            }
        }
        covered += cur_hi - cur_lo;
        area += covered * (x1 - x0);
    }
    return area;
}

} // namespace flexagg
