#include "flexagg/cli.hpp"

#include "flexagg/errors.hpp"
#include "flexagg/parallel.hpp"
#include "flexagg/pipeline.hpp"
#include "flexagg/svg.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

namespace flexagg {

namespace {

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string profile = "default";
    int threads = 0;
    Tolerances tol;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << text;
}

void apply_seed(const Globals& g, ScenarioSettings& s) {
    if (g.seed) s.seed = g.seed;
}

struct BuildArgs {
    std::string scenario, output;
};

int cmd_build(const Globals& g, const BuildArgs& a, std::ostream& out) {
    Scenario sc = load_scenario(a.scenario);
    apply_seed(g, sc.settings);
    const PolytopeBundle bundle = build_fleet(sc);
    write_json_file(a.output, to_json(bundle));
    out << "built " << bundle.polytopes.size() << " device polytope(s) -> " << a.output << '\n';
    return exit_ok;
}

struct DecomposeArgs {
    std::string input, output;
    std::optional<int> n_s;
    std::optional<std::string> ratio_mode, selector;
};

int cmd_decompose(const Globals& g, const DecomposeArgs& a, std::ostream& out) {
    PolytopeBundle fleet = polytope_bundle_from_json(read_json_file(a.input));
    apply_seed(g, fleet.settings);
    if (a.n_s) fleet.settings.n_s = *a.n_s;
    if (a.ratio_mode) fleet.settings.ratio_mode = parse_ratio_mode(*a.ratio_mode);
    if (a.selector) fleet.settings.prototype_selector = parse_prototype_selector(*a.selector);
    const TreeBundle trees = decompose_bundle(fleet, g.tol);
    write_json_file(a.output, to_json(trees));
    if (trees.ratios) {
        out << "prototype ratios:";
        for (double r : trees.ratios->r) out << ' ' << r;
        out << '\n';
    }
    out << "cumulative coverage by stage\n" << coverage_table(stage_coverage(trees, g.tol));
    return exit_ok;
}

struct AggregateArgs {
    std::string input, output, metrics;
    std::vector<std::string> policies;
    bool timing = false;
};

int cmd_aggregate(const Globals& g, const AggregateArgs& a, std::ostream& out, std::ostream& err) {
    TreeBundle trees = tree_bundle_from_json(read_json_file(a.input));
    apply_seed(g, trees.fleet.settings);
    const auto& policies = a.policies.empty() ? trees.fleet.settings.candidate_policy : a.policies;
    const AggregateResult res = aggregate_bundle(trees, policies, a.timing, g.tol);
    write_json_file(a.output, to_json(res.approx));
    const std::string csv = metrics_csv(res.metrics);
    if (!a.metrics.empty()) write_text(a.metrics, csv);
    for (const auto& t : res.approx.tiers)
        if (t.substitutions > 0)
            err << tier_label(t.policy) << ": " << t.substitutions << " stage-1 box(es) replaced by stage-0 boxes\n";
    out << "reference: " << res.truth_note << '\n' << csv;
    return exit_ok;
}

struct PlotArgs {
    std::string input, output;
};

std::vector<SvgPanel> tree_panels(const TreeBundle& b, const Tolerances& tol) {
    std::vector<SvgPanel> panels;
    for (std::size_t i = 0; i < b.trees.size(); ++i) {
        SvgPanel p{"device " + std::to_string(i), {}};
        try {
            p.shapes.push_back(svg_shape(vertex_enum_2d(b.fleet.polytopes[i], tol), "#000000", "none", 0.0, "polytope"));
        } catch (const DegeneratePolytope&) {
        }
        for (const auto& n : b.trees[i].nodes)
            p.shapes.push_back(svg_shape(n.box, "#333333", stage_colour(n.stage), 0.5, "stage " + std::to_string(n.stage)));
        panels.push_back(std::move(p));
    }
    return panels;
}

int cmd_plot(const Globals& g, const PlotArgs& a, std::ostream& out) {
    const nlohmann::json doc = read_json_file(a.input);
    const std::string format = format_of(doc);
    std::vector<SvgPanel> panels;
    auto refuse = [&](int dim) {
        if (dim != 2) throw InvalidArgument("plot: only 2D data can be drawn (dimension " + std::to_string(dim) + ")");
    };
    if (format == kApproxFormat) {
        const ApproxBundle b = approx_bundle_from_json(doc);
        refuse(b.dim);
        SvgPanel p{"aggregate", {}};
        if (b.truth) p.shapes.push_back(svg_shape(*b.truth, "#000000", "#dddddd", 0.6, "true sum"));
        for (std::size_t t = 0; t < b.tiers.size(); ++t) {
            const auto& tier = b.tiers[t];
            if (tier.approx.hull)
                p.shapes.push_back(svg_shape(*tier.approx.hull, stage_colour(static_cast<int>(t)), "none", 0.0,
                                             tier_label(tier.policy)));
            for (const auto& box : tier.approx.boxes)
                p.shapes.push_back(svg_shape(box, "#333333", stage_colour(static_cast<int>(t)), 0.35,
                                             tier_label(tier.policy)));
        }
        panels.push_back(std::move(p));
    } else if (format == kTreesFormat) {
        const TreeBundle b = tree_bundle_from_json(doc);
        for (const auto& poly : b.fleet.polytopes) refuse(poly.dim());
        panels = tree_panels(b, g.tol);
    } else if (format == kPolytopesFormat) {
        const PolytopeBundle b = polytope_bundle_from_json(doc);
        for (std::size_t i = 0; i < b.polytopes.size(); ++i) {
            refuse(b.polytopes[i].dim());
            panels.push_back({"device " + std::to_string(i),
                              {svg_shape(vertex_enum_2d(b.polytopes[i], g.tol), "#000000", "#1f77b4", 0.4, "polytope")}});
        }
    } else {
        throw SchemaError("$.format", "not a polytope, tree or approximation file");
    }
    write_text(a.output, render_svg(panels));
    out << "wrote " << panels.size() << " panel(s) -> " << a.output << '\n';
    return exit_ok;
}

struct ValidateArgs {
    std::string scenario;
};

class Checks {
public:
    explicit Checks(std::ostream& out) : out_(out) {}
    void report(const std::string& name, bool ok, const std::string& detail) {
        out_ << (ok ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : "  " + detail) << '\n';
        failed_ = failed_ || !ok;
    }
    bool failed() const { return failed_; }

private:
    std::ostream& out_;
    bool failed_ = false;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

bool box_inside(const HPolytope& p, const AlignedBox& b, double tol) {
    const Eigen::MatrixXd Ap = p.A().cwiseMax(0.0);
    const Eigen::MatrixXd Am = (-p.A()).cwiseMax(0.0);
    return ((Ap * b.hi() - Am * b.lo() - p.b()).array() <= tol).all();
}

int cmd_validate(const Globals& g, const ValidateArgs& a, std::ostream& out) {
    Scenario sc = load_scenario(a.scenario);
    apply_seed(g, sc.settings);
    const PolytopeBundle fleet = build_fleet(sc);
    const TreeBundle trees = decompose_bundle(fleet, g.tol);
    Checks checks(out);

    std::size_t outside = 0, growing = 0;
    for (std::size_t i = 0; i < trees.trees.size(); ++i) {
        const auto& nodes = trees.trees[i].nodes;
        for (const auto& n : nodes) {
            if (!box_inside(fleet.polytopes[i], n.box, g.tol.feasibility)) ++outside;
            if (n.parent >= 0 && n.box.volume() > nodes[static_cast<std::size_t>(n.parent)].box.volume() * (1 + 1e-9))
                ++growing;
        }
    }
    checks.report("boxes-inside-device", outside == 0, std::to_string(outside) + " violation(s)");
    checks.report("child-volume-monotone", growing == 0, std::to_string(growing) + " violation(s)");

    const auto coverage = stage_coverage(trees, g.tol);
    std::size_t drops = 0;
    for (const auto& c : coverage)
        for (std::size_t s = 1; s < c.size(); ++s)
            if (c[s] < c[s - 1] - 1e-12) ++drops;
    checks.report("coverage-nondecreasing", drops == 0, std::to_string(drops) + " violation(s)");

    const int dim = fleet.polytopes.front().dim();
    const auto& policies = sc.settings.candidate_policy;
    const AggregateResult res = aggregate_bundle(trees, policies, false, g.tol);
    for (const auto& t : res.approx.tiers) {
        if (t.policy == "stage01-faces")
            checks.report("candidate-count", t.approx.boxes.size() == static_cast<std::size_t>(2 * dim + 1),
                          std::to_string(t.approx.boxes.size()) + " tuples");
        if (res.approx.truth && t.policy != kAnalyticTier) {
            const HPolytope truth = to_hpolytope(*res.approx.truth);
            std::size_t bad = 0;
            for (const auto& b : t.approx.boxes)
                for (const Point2& c : corners_2d(b)) bad += contains(truth, Eigen::Vector2d(c.x, c.y), 1e-7) ? 0 : 1;
            if (t.approx.hull)
                for (const Point2& c : t.approx.hull->vertices())
                    bad += contains(truth, Eigen::Vector2d(c.x, c.y), 1e-7) ? 0 : 1;
            checks.report("inner-approximation:" + tier_label(t.policy), bad == 0, std::to_string(bad) + " corner(s) outside");
        }
    }
    for (const auto& r : res.metrics)
        if (r.ratio) checks.report("ratio-at-most-one:" + r.policy, *r.ratio <= 1.0 + 1e-9, fmt(*r.ratio));

    for (const auto& [key, e] : sc.expect) {
        std::optional<double> got;
        if (key.rfind("coverage_s", 0) == 0) {
            got = mean_coverage(coverage, std::stoul(key.substr(10)));
        } else {
            for (const auto& r : res.metrics)
                if (r.policy == key) got = r.ratio;
        }
        if (!got) {
            checks.report("expect:" + key, false, "metric not produced");
            continue;
        }
        checks.report("expect:" + key, std::abs(*got - e.value) <= e.tol,
                      fmt(*got) + " vs " + fmt(e.value) + " +/- " + fmt(e.tol));
    }
    return checks.failed() ? exit_failed : exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Inner approximations of Minkowski sums of DER flexibility polytopes", "flexagg"};
    app.require_subcommand(1);
    Globals g;
    std::uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "Override the scenario seed");
    app.add_option("--tolerance-profile", g.profile, "default, strict or loose");
    app.add_option("--threads", g.threads, "Worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);

    BuildArgs build;
    auto* sub_build = app.add_subcommand("build", "Scenario JSON -> device polytopes");
    sub_build->add_option("scenario", build.scenario)->required();
    sub_build->add_option("-o,--output", build.output)->required();

    DecomposeArgs dec;
    auto* sub_dec = app.add_subcommand("decompose", "Device polytopes -> decomposition trees");
    sub_dec->add_option("polytopes", dec.input)->required();
    sub_dec->add_option("-o,--output", dec.output)->required();
    sub_dec->add_option("--n-s", dec.n_s, "Stage cap");
    sub_dec->add_option("--ratio-mode", dec.ratio_mode, "prototype, relaxed or auto");
    sub_dec->add_option("--prototype-selector", dec.selector, "first, index, largest-area or median-ratio");

    AggregateArgs agg;
    auto* sub_agg = app.add_subcommand("aggregate", "Trees -> aggregate boxes and accuracy metrics");
    sub_agg->add_option("trees", agg.input)->required();
    sub_agg->add_option("-o,--output", agg.output)->required();
    sub_agg->add_option("--metrics", agg.metrics, "CSV file for the metrics rows");
    sub_agg->add_option("--policy", agg.policies, "Tier to aggregate (repeatable); default from the scenario");
    sub_agg->add_flag("--timing", agg.timing, "Record wall-clock runtimes in the metrics");

    PlotArgs plot;
    auto* sub_plot = app.add_subcommand("plot", "Polytope, tree or approximation file -> SVG");
    sub_plot->add_option("input", plot.input)->required();
    sub_plot->add_option("-o,--output", plot.output)->required();

    ValidateArgs val;
    auto* sub_val = app.add_subcommand("validate", "Run the pipeline on a scenario and check its invariants");
    sub_val->add_option("scenario", val.scenario)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_schema;
    }

    try {
        if (*seed_opt) g.seed = seed;
        g.tol = tolerance_profile(g.profile);
        set_threads(g.threads);
        if (*sub_build) return cmd_build(g, build, out);
        if (*sub_dec) return cmd_decompose(g, dec, out);
        if (*sub_agg) return cmd_aggregate(g, agg, out, err);
        if (*sub_plot) return cmd_plot(g, plot, out);
        if (*sub_val) return cmd_validate(g, val, out);
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << '\n';
        return exit_schema;
    } catch (const InfeasibleModel& e) {
        err << "infeasible model: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return exit_schema;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failed;
    }
    return exit_failed;
}

} // namespace flexagg
