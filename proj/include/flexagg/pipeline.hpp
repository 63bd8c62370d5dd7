#pragma once

#include "flexagg/io.hpp"
#include "flexagg/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flexagg {

// Tier names accepted in candidate_policy lists, besides the CandidatePolicy names.
inline constexpr const char* kHullTier = "hull";
inline constexpr const char* kAnalyticTier = "analytic";

bool is_known_tier(const std::string& name);
// CSV label of a tier: stage0-only -> stage0, stage01-faces -> candidates.
std::string tier_label(const std::string& name);

// Throws InfeasibleModel for a device whose parameters leave no feasible set.
PolytopeBundle build_fleet(const Scenario& scenario);

// Prototype ratios (when the ratio mode uses them) and one tree per device.
TreeBundle decompose_bundle(const PolytopeBundle& fleet, const Tolerances& tol = default_tolerances());

// Cumulative coverage per stage for every device: exact in 1D and 2D,
// Monte Carlo (settings.mc_samples, seed + device index) from 3D up. An empty
// vector marks a device whose polytope has no volume.
std::vector<std::vector<double>> stage_coverage(const TreeBundle& trees, const Tolerances& tol = default_tolerances());

// Mean over devices of the coverage after `stage`; a tree that stopped earlier
// contributes its last value. None when no device has a volume.
std::optional<double> mean_coverage(const std::vector<std::vector<double>>& coverage, std::size_t stage);

struct MetricsRow {
    std::string policy;                 // tier label
    std::optional<double> ratio;        // none when no truth is available
    std::optional<double> runtime_s;
};

struct AggregateResult {
    ApproxBundle approx;
    std::vector<MetricsRow> metrics;
    std::string truth_note;             // how the reference was obtained
};

// Aggregates every tier in `policies` (CandidatePolicy names, "hull", "analytic")
// and scores it: against the exact sum in 2D, the exact interval in 1D, and a
// Monte-Carlo membership oracle over random subfleets from 3D up.
// Throws InvalidArgument for an empty or unknown policy list or mixed dimensions.
AggregateResult aggregate_bundle(const TreeBundle& trees, const std::vector<std::string>& policies,
                                 bool timing = false, const Tolerances& tol = default_tolerances());

std::string metrics_csv(const std::vector<MetricsRow>& rows);
std::string coverage_table(const std::vector<std::vector<double>>& coverage);

} // namespace flexagg
