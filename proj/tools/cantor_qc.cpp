#include "cantorqc/analysis.hpp"
#include "cantorqc/cantor_levels.hpp"
#include "cantorqc/dilatation.hpp"
#include "cantorqc/emit.hpp"
#include "cantorqc/errors.hpp"
#include "cantorqc/gap_sequence.hpp"
#include "cantorqc/julia.hpp"
#include "cantorqc/obstruction.hpp"
#include "cantorqc/pants.hpp"
#include "cantorqc/qc_map.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cantorqc;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

void deliver(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file(out_path, content);
}

Cpx parse_complex(const std::string& text) {
    std::istringstream in(text);
    double re = 0.0, im = 0.0;
    char sep = 0;
    if (!(in >> re)) throw std::invalid_argument("bad complex: " + text);
    if (in >> sep) {
        if (sep != ',' || !(in >> im))
            throw std::invalid_argument("bad complex: " + text);
    }
    return {re, im};
}

double resolve_delta(const GapSequence& a, const GapSequence* b,
                     const std::string& delta_flag) {
    if (!delta_flag.empty()) return parse_rational(delta_flag);
    if (b) return effective_delta(a, *b);
    auto lb = a.lower_bound();
    if (!lb) throw no_lower_bound_error("sequence has no lower bound; pass --delta");
    return *lb;
}

struct Options {
    std::string seq, seq2;
    std::string delta;
    int depth = 6;
    int horizon = 200;
    std::vector<double> eps{0.2, 0.1, 0.05};
    int grid = 256;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    std::string at;
    std::string c = "5";
    double k_qc = 2.0;
    double d = 0.0;
    int m = 1;
    int samples = 200;
    double radius = 0.0;
    int plan_l = 0;
    std::vector<int> plan_rows;
    double a = 0.5;
    int shift = 1;
    int iters = 100;
};

int cmd_build(const Options& o) {
    auto seq = parse_sequence_spec(o.seq);
    auto levels = CantorLevels::build(seq, o.depth);
    if (o.format == "svg") {
        deliver(svg_levels(levels), o.out);
    } else if (o.format == "report") {
        std::ostringstream s;
        s << "sequence " << seq.describe() << " depth " << levels.depth()
          << "\n";
        for (int k = 0; k <= levels.depth(); ++k)
            s << "level " << k << ": " << levels.intervals(k).size()
              << " intervals of length " << format_g17(levels.interval_length(k))
              << "\n";
        deliver(s.str(), o.out);
    } else {
        deliver(csv_levels(levels), o.out);
    }
    return kExitOk;
}

int cmd_metric(const Options& o) {
    auto a = parse_sequence_spec(o.seq);
    auto b = parse_sequence_spec(o.seq2);
    auto d = sequence_distance(a, b, o.horizon);
    std::ostringstream s;
    s << format_g17(d.value) << ' '
      << (d.flag == DistanceFlag::Exact ? "exact" : "truncated")
      << " attained_at " << d.attained_at << "\n";
    deliver(s.str(), o.out);
    return kExitOk;
}

int cmd_pants(const Options& o) {
    auto seq = parse_sequence_spec(o.seq);
    double delta = resolve_delta(seq, nullptr, o.delta);
    auto levels = CantorLevels::build(seq, o.depth);
    auto pants = PantsDecomposition::build(levels, delta);
    if (o.format == "svg")
        deliver(svg_pants(levels, pants), o.out);
    else if (o.format == "report") {
        std::ostringstream s;
        s << "delta " << format_g17(delta) << " min_margin "
          << format_g17(pants.min_margin()) << "\n";
        deliver(s.str(), o.out);
    } else
        deliver(csv_pants(pants), o.out);
    return kExitOk;
}

int cmd_map_eval(const Options& o) {
    auto a = parse_sequence_spec(o.seq);
    auto b = parse_sequence_spec(o.seq2);
    double delta = resolve_delta(a, &b, o.delta);
    auto map = PiecewiseQCMap::build(a, b, delta, o.depth);
    Cpx z = parse_complex(o.at);
    Cpx w = map.eval(z);
    std::ostringstream s;
    s << format_g17(w.real()) << ' ' << format_g17(w.imag()) << "\n";
    deliver(s.str(), o.out);
    return kExitOk;
}

int cmd_map_check(const Options& o) {
    auto a = parse_sequence_spec(o.seq);
    auto b = parse_sequence_spec(o.seq2);
    double delta = resolve_delta(a, &b, o.delta);
    auto map = PiecewiseQCMap::build(a, b, delta, o.depth);
    double dist = sequence_distance(a, b, o.horizon).value;
    double budget = std::exp(c_delta(delta) * dist);
    double max_k = 1.0;
    for (int k = 0; k < o.depth; ++k) {
        int n_pants = 1 << k;
        for (int i = 1; i <= n_pants; ++i) {
            auto stats = measure_pants_dilatation(map, k, i, o.grid / 4);
            max_k = std::max(max_k, stats.max_k);
        }
    }
    std::ostringstream s;
    s << "measured_max_K " << format_g17(max_k) << " budget "
      << format_g17(budget) << "\n";
    deliver(s.str(), o.out);
    return max_k <= budget * 1.01 ? kExitOk : kExitCheckFailed;
}

int cmd_bound(const Options& o) {
    auto a = parse_sequence_spec(o.seq);
    auto b = parse_sequence_spec(o.seq2);
    double delta = resolve_delta(a, &b, o.delta);
    auto ledger = build_ledger(a, b, delta, o.depth, o.horizon);
    if (o.format == "report") {
        std::ostringstream s;
        s << "delta " << format_g17(ledger.delta) << " distance "
          << format_g17(ledger.distance) << " C " << format_g17(ledger.c)
          << " budget_d " << format_g17(ledger.budget) << " sup_level_total "
          << format_g17(ledger.sup_total) << "\n";
        deliver(s.str(), o.out);
    } else
        deliver(csv_ledger(ledger), o.out);
    return kExitOk;
}

int cmd_dim(const Options& o) {
    auto seq = parse_sequence_spec(o.seq);
    auto est = box_dimension(CantorLevels::build(seq, o.depth));
    std::ostringstream s;
    if (est.degenerate)
        s << "undecided (degenerate scales)\n";
    else
        s << "dim " << format_g17(est.slope) << " band "
          << format_g17(est.band) << "\n";
    deliver(s.str(), o.out);
    return kExitOk;
}

int cmd_capacity(const Options& o) {
    auto seq = parse_sequence_spec(o.seq);
    auto rep = capacity_classify(seq, o.horizon);
    std::ostringstream s;
    const char* verdict =
        rep.verdict == CapacityVerdict::ZeroCapacity      ? "zero-capacity"
        : rep.verdict == CapacityVerdict::PositiveCapacity ? "positive-capacity"
                                                           : "undecided";
    s << verdict << " S_" << rep.partial_sums.size() << ' '
      << format_g17(rep.partial_sums.back()) << " certificate: "
      << rep.certificate << "\n";
    deliver(s.str(), o.out);
    return kExitOk;
}

int cmd_obstruct(const Options& o) {
    auto seq = parse_sequence_spec(o.seq);
    double d = o.d > 0.0 ? o.d : default_systole();
    auto w = find_obstruction(seq, o.k_qc, d, o.horizon);
    std::ostringstream s;
    if (w)
        s << "witness level " << w->level << " core_length "
          << format_g17(w->core_length) << " threshold "
          << format_g17(w->threshold) << "\n";
    else
        s << "none (threshold " << format_g17(wolpert_threshold(o.k_qc, d))
          << ")\n";
    deliver(s.str(), o.out);
    return kExitOk;
}

int cmd_julia_scan(const Options& o) {
    Cpx c = parse_complex(o.c);
    double radius = o.radius > 0.0 ? o.radius : escape_radius(c);
    auto v = classify_quadratic(c, o.iters, radius);
    std::ostringstream s;
    if (v.verdict == JuliaVerdict::CantorHyperbolic) {
        s << "cantor-hyperbolic escape_iteration " << v.escape_iteration
          << " radius " << format_g17(v.radius) << "\n";
        auto cert = hyperbolicity_certificate(c, o.m, o.samples, o.seed);
        s << "certificate m " << cert.m << " min_derivative "
          << format_g17(cert.min_derivative) << ' '
          << (cert.pass ? "pass" : "fail") << "\n";
    } else {
        s << "connected-or-undecided radius " << format_g17(v.radius) << "\n";
    }
    deliver(s.str(), o.out);
    return kExitOk;
}

int cmd_julia_exhaust(const Options& o) {
    Cpx c = parse_complex(o.c);
    double radius = o.radius > 0.0 ? o.radius : escape_radius(c);
    auto census = fatou_exhaustion_census(c, o.depth, o.grid, radius);
    deliver(csv_census(census), o.out);
    for (const auto& lvl : census.levels)
        if (!lvl.stable) return kExitCheckFailed;
    return kExitOk;
}

int cmd_plan(const Options& o) {
    auto plan = plan_matching(o.plan_l, o.plan_rows);
    std::ostringstream s;
    s << "N0 " << plan.n0 << " l0 " << plan.l0 << "\n";
    for (std::size_t j = 0; j < plan.l1.size(); ++j)
        s << "component " << j + 1 << ": L1 " << plan.l1[j]
          << " partial_row " << plan.partial_row[j] << "\n";
    deliver(s.str(), o.out);
    return kExitOk;
}

int cmd_example_geom(const Options& o) {
    auto budget = geometric_example_budget(o.a, o.shift, o.depth);
    std::ostringstream s;
    s << "level,d_phi,d_psi,total\n";
    for (const auto& row : budget.rows)
        s << row.level << ',' << format_g17(row.d_phi) << ','
          << format_g17(row.d_psi) << ',' << format_g17(row.total) << "\n";
    s << "sup_total," << format_g17(budget.sup_total) << ",,\n";
    deliver(s.str(), o.out);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random Cantor sets, quasiconformal maps between their "
                 "complements, and the associated analytic classifiers"};
    app.require_subcommand(1);

    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "Output file (default stdout)");
        sub->add_option("--format", o.format, "csv, svg or report")
            ->check(CLI::IsMember({"csv", "svg", "report"}));
    };

    auto* build = app.add_subcommand("build", "Construct Cantor set levels");
    build->add_option("seq", o.seq, "Gap sequence spec")->required();
    build->add_option("--depth", o.depth, "Levels to build");
    add_common(build);

    auto* metric = app.add_subcommand("metric", "Distance d(omega, omega~)");
    metric->add_option("seq", o.seq)->required();
    metric->add_option("seq2", o.seq2)->required();
    metric->add_option("--horizon", o.horizon, "Evaluation horizon");
    add_common(metric);

    auto* pants = app.add_subcommand("pants", "Pants decomposition circles");
    pants->add_option("seq", o.seq)->required();
    pants->add_option("--depth", o.depth);
    pants->add_option("--delta", o.delta, "Lower bound override");
    add_common(pants);

    auto* map_eval = app.add_subcommand("map-eval", "Evaluate the glued map");
    map_eval->add_option("seq", o.seq)->required();
    map_eval->add_option("seq2", o.seq2)->required();
    map_eval->add_option("--depth", o.depth);
    map_eval->add_option("--delta", o.delta);
    map_eval->add_option("--at", o.at, "Point re,im")->required();
    add_common(map_eval);

    auto* map_check =
        app.add_subcommand("map-check", "Measured dilatation vs budget");
    map_check->add_option("seq", o.seq)->required();
    map_check->add_option("seq2", o.seq2)->required();
    map_check->add_option("--depth", o.depth);
    map_check->add_option("--delta", o.delta);
    map_check->add_option("--horizon", o.horizon);
    map_check->add_option("--grid", o.grid, "Measurement grid");
    add_common(map_check);

    auto* bound = app.add_subcommand("bound", "Per-level dilatation ledger");
    bound->add_option("seq", o.seq)->required();
    bound->add_option("seq2", o.seq2)->required();
    bound->add_option("--depth", o.depth);
    bound->add_option("--delta", o.delta);
    bound->add_option("--horizon", o.horizon);
    add_common(bound);

    auto* dim = app.add_subcommand("dim", "Box-counting dimension");
    dim->add_option("seq", o.seq)->required();
    dim->add_option("--depth", o.depth);
    add_common(dim);

    auto* capacity = app.add_subcommand("capacity", "Capacity classification");
    capacity->add_option("seq", o.seq)->required();
    capacity->add_option("--horizon", o.horizon, "Partial-sum terms");
    add_common(capacity);

    auto* obstruct =
        app.add_subcommand("obstruct", "Hyperbolic-length obstruction scan");
    obstruct->add_option("seq", o.seq)->required();
    obstruct->add_option("--K", o.k_qc, "Dilatation bound");
    obstruct->add_option("--d", o.d, "Reference systole (default 2pi^2/log 3)");
    obstruct->add_option("--horizon", o.horizon);
    add_common(obstruct);

    auto* jscan = app.add_subcommand("julia-scan", "Quadratic Julia verdict");
    jscan->add_option("--c", o.c, "Parameter re,im")->required();
    jscan->add_option("--iter", o.iters, "Iteration budget");
    jscan->add_option("--radius", o.radius, "Escape radius override");
    jscan->add_option("--m", o.m, "Derivative power for the certificate");
    jscan->add_option("--samples", o.samples);
    jscan->add_option("--seed", o.seed);
    add_common(jscan);

    auto* jex = app.add_subcommand("julia-exhaust", "Fatou exhaustion census");
    jex->add_option("--c", o.c)->required();
    jex->add_option("--depth", o.depth, "k_max");
    jex->add_option("--grid", o.grid, "Base raster resolution");
    jex->add_option("--radius", o.radius);
    add_common(jex);

    auto* plan = app.add_subcommand("plan", "Exhaustion matching schedule");
    plan->add_option("--l", o.plan_l, "Shell component count")->required();
    plan->add_option("--L", o.plan_rows, "Boundary counts L(j)");
    add_common(plan);

    auto* geom = app.add_subcommand("example-geom", "a^n vs a^(n+L) budgets");
    geom->add_option("--a", o.a, "Ratio in (0,1)");
    geom->add_option("--shift", o.shift, "The L offset");
    geom->add_option("--depth", o.depth);
    add_common(geom);

    // Config keys for a subcommand live in a section named after it; the
    // fallthrough lets --config appear after the subcommand name.
    app.set_config("--config")->configurable(false);
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) {
             return true;
         }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*build) return cmd_build(o);
        if (*metric) return cmd_metric(o);
        if (*pants) return cmd_pants(o);
        if (*map_eval) return cmd_map_eval(o);
        if (*map_check) return cmd_map_check(o);
        if (*bound) return cmd_bound(o);
        if (*dim) return cmd_dim(o);
        if (*capacity) return cmd_capacity(o);
        if (*obstruct) return cmd_obstruct(o);
        if (*jscan) return cmd_julia_scan(o);
        if (*jex) return cmd_julia_exhaust(o);
        if (*plan) return cmd_plan(o);
        if (*geom) return cmd_example_geom(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
