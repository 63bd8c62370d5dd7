#include "flexagg/pipeline.hpp"

#include "flexagg/errors.hpp"
#include "flexagg/homothet.hpp"
#include "flexagg/membership.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

namespace flexagg {

bool is_known_tier(const std::string& name) {
    return name == "stage0-only" || name == "stage01-faces" || name == "full-product" || name == kHullTier ||
           name == kAnalyticTier;
}

std::string tier_label(const std::string& name) {
    if (name == "stage0-only") return "stage0";
    if (name == "stage01-faces") return "candidates";
    return name;
}

PolytopeBundle build_fleet(const Scenario& scenario) {
    PolytopeBundle out;
    out.settings = scenario.settings;
    out.expect = scenario.expect;
    out.devices = instantiate(scenario);
    for (std::size_t i = 0; i < out.devices.size(); ++i)
        out.polytopes.push_back(device_polytope(out.devices[i], static_cast<int>(i)));
    return out;
}

namespace {

int common_dim(const std::vector<HPolytope>& polys) {
    if (polys.empty()) throw InvalidArgument("empty fleet");
    for (const auto& p : polys)
        if (p.dim() != polys.front().dim()) throw InvalidArgument("devices have different dimensions");
    return polys.front().dim();
}

double union_length(const std::vector<AlignedBox>& boxes) {
    std::vector<std::pair<double, double>> iv;
    for (const auto& b : boxes) iv.emplace_back(b.lo()(0), b.hi()(0));
    std::sort(iv.begin(), iv.end());
    double total = 0.0, lo = 0.0, hi = 0.0;
    bool open = false;
    for (const auto& [a, c] : iv) {
        if (!open || a > hi) {
            if (open) total += hi - lo;
            lo = a, hi = c, open = true;
        } else {
            hi = std::max(hi, c);
        }
    }
    return open ? total + hi - lo : 0.0;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::optional<der::InverterParams> analytic_aggregate(const std::vector<Device>& devices) {
    std::vector<der::InverterParams> params;
    for (const auto& d : devices) {
        const auto* p = std::get_if<der::InverterParams>(&d.params);
        if (!p) return std::nullopt;
        params.push_back(*p);
    }
    const auto& f = params.front();
    const bool pv = f.theta.has_value();
    for (const auto& p : params)
        if (p.theta.has_value() != pv || p.N != f.N) return std::nullopt;
    const bool homogeneous = std::all_of(params.begin(), params.end(), [&](const der::InverterParams& p) {
        return p.p_min == f.p_min && p.p_max == f.p_max && p.theta == f.theta;
    });
    if (!pv) return homogeneous ? std::optional(aggregate_theorem1(params)) : std::nullopt;
    return homogeneous ? aggregate_corollary1(params) : aggregate_theorem2_lower_bound(params);
}

} // namespace

TreeBundle decompose_bundle(const PolytopeBundle& fleet, const Tolerances& tol) {
    TreeBundle out;
    out.fleet = fleet;
    const auto& s = fleet.settings;
    const int dim = common_dim(fleet.polytopes);
    const PrototypeRatios dummy{std::vector<double>(static_cast<std::size_t>(dim - 1), 1.0)};
    if (dim >= 2 && effective_ratios(s.ratio_mode, dummy, dim))
        out.ratios = representative_prototype(fleet.polytopes, s.prototype_selector,
                                              static_cast<std::size_t>(s.prototype_index), tol);
    HpdSettings hs;
    hs.n_s = s.n_s;
    hs.vol_threshold = s.vol_threshold;
    hs.ratios = out.ratios;
    out.trees = decompose_fleet(fleet.polytopes, hs, tol);
    return out;
}

std::vector<std::vector<double>> stage_coverage(const TreeBundle& trees, const Tolerances& tol) {
    const auto& polys = trees.fleet.polytopes;
    std::vector<std::vector<double>> out(polys.size());
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const auto& tree = trees.trees[i];
        if (tree.root_degenerate || classify(polys[i], tol) != RegionStatus::full) continue;
        if (polys[i].dim() == 1) {
            const double len = bounding_box(polys[i], tol).volume();
            for (int s = 0; s <= tree.max_stage(); ++s) out[i].push_back(union_length(boxes_through_stage(tree, s)) / len);
            continue;
        }
        CoverageOptions opt;
        opt.method = polys[i].dim() == 2 ? CoverageMethod::exact2d : CoverageMethod::montecarlo;
        opt.samples = trees.fleet.settings.mc_samples;
        opt.seed = trees.fleet.settings.seed.value_or(0) + i;
        out[i] = coverage_by_stage(tree, polys[i], opt, tol);
    }
    return out;
}

std::optional<double> mean_coverage(const std::vector<std::vector<double>>& coverage, std::size_t stage) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& c : coverage)
        if (!c.empty()) sum += c[std::min(stage, c.size() - 1)], ++n;
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

AggregateResult aggregate_bundle(const TreeBundle& bundle, const std::vector<std::string>& policies, bool timing,
                                 const Tolerances& tol) {
    if (policies.empty()) throw InvalidArgument("aggregate: empty policy list");
    for (const auto& p : policies)
        if (!is_known_tier(p)) throw InvalidArgument("aggregate: unknown policy '" + p + "'");
    const auto& fleet = bundle.fleet;
    const int dim = common_dim(fleet.polytopes);
    const auto& settings = fleet.settings;

    AggregateResult res;
    res.approx.dim = dim;

    auto box_tier = [&](std::span<const DecompositionTree> trees, const std::string& name) {
        const CandidateSelection sel = select_candidates(trees, parse_candidate_policy(name));
        return ApproxTier{name, union_msum(trees, sel), sel.substitutions};
    };
    auto add_row = [&](const std::string& name, std::optional<double> ratio, std::optional<double> runtime) {
        res.metrics.push_back({tier_label(name), ratio, timing ? runtime : std::nullopt});
    };

    if (dim <= 2) {
        std::optional<double> truth_measure;
        if (dim == 2) {
            try {
                res.approx.truth = exact_fleet_msum_2d(fleet.polytopes, std::max<std::size_t>(256, fleet.polytopes.size()), tol);
                truth_measure = polygon_area(*res.approx.truth);
                res.truth_note = "exact 2D Minkowski sum";
            } catch (const DegeneratePolytope&) {
                res.truth_note = "no exact sum: a device polytope has no area";
            }
        } else {
            std::vector<AlignedBox> boxes;
            for (const auto& p : fleet.polytopes) boxes.push_back(bounding_box(p, tol));
            truth_measure = box_msum(boxes).volume();
            res.truth_note = "exact interval sum";
        }
        auto score = [&](const AggregateApprox& a) -> std::optional<double> {
            if (!truth_measure) return std::nullopt;
            if (dim == 1) return *truth_measure > 0.0 ? union_length(a.boxes) / *truth_measure : 1.0;
            return accuracy_ratio(a, *res.approx.truth);
        };

        std::vector<AlignedBox> all_boxes;
        for (const auto& name : policies) {
            const auto t0 = Clock::now();
            if (name == kHullTier) {
                if (dim != 2) {
                    res.truth_note += "; hull skipped (needs 2D)";
                    continue;
                }
                ApproxTier tier{name, {}, 0};
                tier.approx.boxes = all_boxes;
                if (tier.approx.boxes.empty()) tier.approx.boxes = box_tier(bundle.trees, "stage01-faces").approx.boxes;
                tier.approx.hull = hull_of_boxes_2d(tier.approx);
                const double rt = seconds_since(t0);
                add_row(name, score(tier.approx), rt);
                res.approx.tiers.push_back(std::move(tier));
            } else if (name == kAnalyticTier) {
                const auto agg = analytic_aggregate(fleet.devices);
                if (!agg) throw InvalidArgument("aggregate: the analytic tier needs an inverter fleet of one kind and one N");
                ApproxTier tier{name, {}, 0};
                tier.approx.hull = vertex_enum_2d(der::inverter_polytope(*agg), tol);
                const double rt = seconds_since(t0);
                add_row(name, score(tier.approx), rt);
                res.approx.tiers.push_back(std::move(tier));
            } else {
                ApproxTier tier = box_tier(bundle.trees, name);
                const double rt = seconds_since(t0);
                all_boxes.insert(all_boxes.end(), tier.approx.boxes.begin(), tier.approx.boxes.end());
                add_row(name, score(tier.approx), rt);
                res.approx.tiers.push_back(std::move(tier));
            }
        }
        return res;
    }

    // R^M: aggregate the whole fleet, score on random subfleets.
    std::vector<std::string> box_names;
    std::vector<double> runtimes;
    for (const auto& name : policies) {
        if (name == kHullTier || name == kAnalyticTier) continue;
        const auto t0 = Clock::now();
        res.approx.tiers.push_back(box_tier(bundle.trees, name));
        runtimes.push_back(seconds_since(t0));
        box_names.push_back(name);
    }

    const std::size_t n = fleet.polytopes.size();
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(settings.subfleet_size), n);
    const std::uint64_t seed = settings.seed.value_or(0);
    std::mt19937_64 gen(seed);
    std::vector<double> sums(box_names.size(), 0.0);
    for (int f = 0; f < settings.subfleets; ++f) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        for (std::size_t i = 0; i < k; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, n - 1);
            std::swap(idx[i], idx[pick(gen)]);
        }
        idx.resize(k);
        std::sort(idx.begin(), idx.end());
        std::vector<DecompositionTree> sub_trees;
        std::vector<HPolytope> sub_polys;
        for (std::size_t i : idx) {
            sub_trees.push_back(bundle.trees[i]);
            sub_polys.push_back(fleet.polytopes[i]);
        }
        std::vector<std::vector<AlignedBox>> tiers;
        for (const auto& name : box_names) tiers.push_back(box_tier(sub_trees, name).approx.boxes);
        const MinkowskiSumOracle oracle(sub_polys, tol, 64, seed + static_cast<std::uint64_t>(f));
        const SumCoverage cov = mc_sum_coverage(oracle, tiers, settings.mc_samples, seed + 1000 + static_cast<std::uint64_t>(f));
        for (std::size_t j = 0; j < sums.size(); ++j) sums[j] += cov.ratio[j];
    }
    std::size_t j = 0;
    for (const auto& name : policies) {
        if (name == kHullTier || name == kAnalyticTier) {
            add_row(name, std::nullopt, std::nullopt);
            continue;
        }
        add_row(name, sums[j] / settings.subfleets, runtimes[j]);
        ++j;
    }
    res.truth_note = "Monte-Carlo membership over " + std::to_string(settings.subfleets) + " subfleet(s) of " +
                     std::to_string(k) + " devices, " + std::to_string(settings.mc_samples) + " samples each";
    return res;
}

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
    std::ostringstream out;
    out << "policy,ratio,runtime_s\n";
    char buf[64];
    for (const auto& r : rows) {
        out << r.policy << ',';
        if (r.ratio) {
            std::snprintf(buf, sizeof buf, "%.6f", *r.ratio);
            out << buf;
        } else {
            out << "NA";
        }
        out << ',';
        if (r.runtime_s) {
            std::snprintf(buf, sizeof buf, "%.6f", *r.runtime_s);
            out << buf;
        } else {
            out << "NA";
        }
        out << '\n';
    }
    return out.str();
}

std::string coverage_table(const std::vector<std::vector<double>>& coverage) {
    std::size_t stages = 0;
    for (const auto& c : coverage) stages = std::max(stages, c.size());
    std::ostringstream out;
    char buf[32];
    out << "device";
    for (std::size_t s = 0; s < stages; ++s) {
        std::snprintf(buf, sizeof buf, "  s=%-4zu", s);
        out << buf;
    }
    out << '\n';
    for (std::size_t i = 0; i < coverage.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%-6zu", i);
        out << buf;
        if (coverage[i].empty()) out << "  degenerate";
        for (double v : coverage[i]) {
            std::snprintf(buf, sizeof buf, "  %.3f ", v);
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

} // namespace flexagg
