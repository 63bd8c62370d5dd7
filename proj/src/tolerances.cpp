#include "flexagg/tolerances.hpp"

#include "flexagg/errors.hpp"

#include <string>

namespace flexagg {

const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

Tolerances tolerance_profile(std::string_view name) {
    Tolerances tol{};
    if (name == "default") return tol;
    if (name == "strict") {
        tol.feasibility = 1e-9;
        tol.degeneracy = 1e-9;
        tol.barrier_gap = 1e-12;
        return tol;
    }
    if (name == "loose") {
        tol.feasibility = 1e-6;
        tol.degeneracy = 1e-6;
        tol.barrier_gap = 1e-8;
        return tol;
    }
    throw InvalidArgument("unknown tolerance profile '" + std::string(name) + "'");
}

} // namespace flexagg
