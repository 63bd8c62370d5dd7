#pragma once

#include "flexagg/box.hpp"
#include "flexagg/polytope.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace flexagg {

// r[k - 1] = d_1 / d_k for k = 2..M, where d_k is the prototype edge along x_k.
struct PrototypeRatios {
    std::vector<double> r;

    static PrototypeRatios from_box(const AlignedBox& box);
    int dim() const { return static_cast<int>(r.size()) + 1; }
    // Edge lengths relative to d_1: (1, 1/r_2, ..., 1/r_M).
    Eigen::VectorXd weights() const;
};

struct BoxFit {
    AlignedBox box;
    bool degenerate = false;   // zero-volume optimum; box is then a point
};

// Largest inscribed axis-aligned box, i.e. lo/hi with A+ hi - A- lo <= b.
// Without ratios the log-volume is maximized; with ratios the edges are tied to
// the prototype shape and d_1 is maximized. Both are solved by a log-barrier
// Newton method started from the Chebyshev center, which returns the central
// (analytic-center) translation when the optimum is not unique.
// Throws EmptyPolytope, InvalidArgument (ratio size mismatch), NumericalFailure.
BoxFit max_box(const HPolytope& poly, const std::optional<PrototypeRatios>& ratios = std::nullopt,
               const Tolerances& tol = default_tolerances());

// Ratio-constrained problem as a plain LP over (center, d_1). Same optimal
// volume as max_box, but the translation is whichever vertex the simplex lands on.
BoxFit max_box_ratio_lp(const HPolytope& poly, const PrototypeRatios& ratios,
                        const Tolerances& tol = default_tolerances());

enum class PrototypeSelector {
    first,          // polys[0]
    index,          // polys[selector_index]
    largest_area,   // largest area (2D) or Monte-Carlo volume
    median_ratio,   // componentwise median of every polytope's own box ratios
};

PrototypeSelector parse_prototype_selector(const std::string& name);
const char* to_string(PrototypeSelector selector);

// Ratios of the unconstrained max box of a representative polytope.
// Throws InvalidArgument (empty list, bad index, mixed dims), DegeneratePolytope.
PrototypeRatios representative_prototype(std::span<const HPolytope> polys,
                                         PrototypeSelector selector = PrototypeSelector::median_ratio,
                                         std::size_t selector_index = 0,
                                         const Tolerances& tol = default_tolerances());

} // namespace flexagg
