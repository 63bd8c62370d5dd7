#pragma once

#include "flexagg/box.hpp"
#include "flexagg/der.hpp"
#include "flexagg/polygon.hpp"
#include "flexagg/polytope.hpp"

#include <memory>
#include <span>
#include <vector>

namespace flexagg {

// Prototype set X0 in V-rep. Homothets refer to it by shared pointer; two
// homothets share a prototype iff they hold the same pointer.
struct Prototype {
    std::vector<Eigen::VectorXd> vertices;
    int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices.front().size()); }
};

using PrototypeRef = std::shared_ptr<const Prototype>;

PrototypeRef make_prototype(const VPolygon& polygon);
PrototypeRef make_prototype(const AlignedBox& box);

// beta * X0 + t
struct Homothet {
    PrototypeRef prototype;
    double beta = 1.0;
    Eigen::VectorXd t;
};

// Largest beta (translation free) with beta * X0 + t inside target: one LP over
// (beta, t) with a row A (beta v_j + t) <= b per prototype vertex.
// Throws EmptyPolytope for an empty target, DegeneratePolytope when beta* == 0.
Homothet fit_homothet(const PrototypeRef& prototype, const HPolytope& target,
                      const Tolerances& tol = default_tolerances());

// sum of homothets of one prototype is (sum beta, sum t). Throws InvalidArgument
// for an empty list or mixed prototypes.
Homothet homothet_msum(std::span<const Homothet> parts);

std::vector<Eigen::VectorXd> realize(const Homothet& h);
VPolygon realize_2d(const Homothet& h);

// Fleets with identical normalized bounds: the sum is X(sum S, p_min, p_max).
der::InverterParams aggregate_theorem1(std::span<const der::InverterParams> devices);

// PV fleets with identical p_max and theta: the sum is X(sum S, p_max, theta).
der::InverterParams aggregate_corollary1(std::span<const der::InverterParams> devices);

// Heterogeneous PV fleets: X(n_d min S, min p_max, min theta) lies inside the sum,
// with equality for homogeneous fleets.
der::InverterParams aggregate_theorem2_lower_bound(std::span<const der::InverterParams> devices);

} // namespace flexagg
