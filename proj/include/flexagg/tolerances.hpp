#pragma once

#include <string_view>

namespace flexagg {

// Every numeric tolerance in the library is read from one of these records.
struct Tolerances {
    double feasibility = 1e-7;      // Ax <= b + feasibility counts as inside
    double vertex_dedup = 1e-9;     // points closer than this are the same vertex
    double degeneracy = 1e-7;       // Chebyshev radius below this => zero-volume region
    double lp_pivot = 1e-9;         // smallest admissible pivot magnitude
    double lp_objective_rel = 1e-8;
    int lp_max_iterations = 20000;
    double barrier_gap = 1e-10;     // bound on log-volume suboptimality of max_box
    int barrier_max_newton = 500;
};

const Tolerances& default_tolerances();

// Named presets selectable from the command line: "default", "strict", "loose".
// Throws InvalidArgument for unknown names.
Tolerances tolerance_profile(std::string_view name);

} // namespace flexagg
