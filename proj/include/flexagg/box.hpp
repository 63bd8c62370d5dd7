#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace flexagg {

struct Point2;

// Axis-aligned box [lo, hi] in R^M.
class AlignedBox {
public:
    AlignedBox() = default;
    // Throws InvalidArgument when sizes differ or lo > hi in some coordinate.
    AlignedBox(Eigen::VectorXd lo, Eigen::VectorXd hi);

    int dim() const { return static_cast<int>(lo_.size()); }
    const Eigen::VectorXd& lo() const { return lo_; }
    const Eigen::VectorXd& hi() const { return hi_; }
    Eigen::VectorXd edges() const { return hi_ - lo_; }
    Eigen::VectorXd center() const { return 0.5 * (lo_ + hi_); }
    double volume() const { return edges().prod(); }
    bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;

    // All 2^M corners, lowest corner first, coordinate 0 toggling fastest.
    std::vector<Eigen::VectorXd> corners() const;

    friend bool operator==(const AlignedBox& a, const AlignedBox& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    Eigen::VectorXd lo_;
    Eigen::VectorXd hi_;
};

// Interval-arithmetic Minkowski sum: componentwise sum of the bounds.
// Exact, since the sum of boxes is a box. Throws on an empty list or mixed dimensions.
AlignedBox box_msum(std::span<const AlignedBox> boxes);

// Corners of a 2D box in counter-clockwise order starting at lo.
std::vector<Point2> corners_2d(const AlignedBox& box);

// Exact area of a union of 2D boxes by sweeping over x and merging y intervals.
double union_area_2d(std::span<const AlignedBox> boxes);

} // namespace flexagg
