#include "fractalfn/cli/commands.hpp"

#include <algorithm>
#include <cmath>

#include "fractalfn/approx.hpp"
#include "fractalfn/dimension.hpp"
#include "fractalfn/fractal.hpp"

namespace fractalfn::cli {

using nlohmann::json;

namespace {

json header(const Config& cfg, const std::string& command) {
    return json{{"command", command}, {"config_hash", cfg.hash}, {"version", kVersion}, {"grid", cfg.grid}};
}

json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

const BaseOperator* linear_base(const Config& cfg) { return std::get_if<BaseOperator>(&cfg.base); }

// Largest k with Lambda_k f in the (m, n) class: numerator degree 2k - 2, denominator degree k.
std::optional<int> jackson_order_for(std::size_t m, std::size_t n) {
    const auto k = static_cast<int>(std::min(n, m / 2 + 1));
    if (k < 2) return std::nullopt;
    return k;
}

}  // namespace

json to_json(const Check& c) {
    json j{{"name", c.name}, {"lhs", c.lhs},       {"rhs", c.rhs},
           {"slack", c.slack}, {"pass", c.pass()}, {"instances", c.instances}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

void merge_worst(Check& into, double lhs, double rhs, double slack, const std::string& detail) {
    const double excess = lhs - rhs - slack;
    if (into.instances == 0 || excess > into.lhs - into.rhs - into.slack) {
        into.lhs = lhs;
        into.rhs = rhs;
        into.slack = slack;
        into.detail = detail;
    }
    ++into.instances;
}

// ------------------------------------------------------------------ render

CommandResult cmd_render(const Config& cfg, const std::filesystem::path& out_dir, bool svg) {
    const FractalSpec spec = cfg.spec();
    const FractalResult r = alpha_fractal(spec, cfg.grid, cfg.tol, cfg.max_iter);
    const SampledFunction b = spec.base_function();

    std::vector<double> xs(cfg.grid);
    for (std::size_t j = 0; j < cfg.grid; ++j) xs[j] = r.values.node(j);
    const auto as_vec = [](const SampledFunction& g) { return std::vector<double>(g.values().begin(), g.values().end()); };

    CommandResult out;
    out.report = header(cfg, "render");
    out.report["iterations"] = r.iterations;
    out.report["final_step"] = r.final_step;
    out.report["certified_gap"] = r.certified_gap;
    out.report["residual"] = self_referential_residual(r, spec);
    std::vector<std::string> files{"graph.csv"};
    write_text(out_dir / "graph.csv",
               csv_table({"x", "f", "b", "f_alpha"}, {xs, as_vec(spec.seed), as_vec(b), as_vec(r.values)}));
    if (svg || cfg.render_svg) {
        write_text(out_dir / "graph.svg", svg_polyline(r.values));
        files.emplace_back("graph.svg");
    }

    if (cfg.render_quotient) {
        const auto& [pf, qf] = *cfg.seed.quotient;
        const BaseOperator& op = *linear_base(cfg);
        const SampledFunction p = SampledFunction::sample(cfg.interval, cfg.grid, pf);
        const SampledFunction q = SampledFunction::sample(cfg.interval, cfg.grid, qf);
        const FractalResult pa = fractal_operator_apply(op, p, cfg.partition, cfg.scaling, cfg.grid, cfg.tol, cfg.max_iter);
        const FractalResult qa = fractal_operator_apply(op, q, cfg.partition, cfg.scaling, cfg.grid, cfg.tol, cfg.max_iter);
        const double q_min = qa.values.min();
        out.report["quotient_denominator_min"] = q_min;
        if (!(q_min > 0.0)) {
            out.exit_code = kExitVerifyFailed;
            out.report["error"] = "fractal denominator q^alpha is not positive on the grid";
        } else {
            std::vector<double> quot(cfg.grid);
            for (std::size_t j = 0; j < cfg.grid; ++j) quot[j] = pa.values[j] / qa.values[j];
            write_text(out_dir / "quotient.csv",
                       csv_table({"x", "p", "q", "p_alpha", "q_alpha", "quotient"},
                                 {xs, as_vec(p), as_vec(q), as_vec(pa.values), as_vec(qa.values), quot}));
            files.emplace_back("quotient.csv");
        }
    }
    out.report["files"] = files;
    write_text(out_dir / "render.json", out.report.dump(2) + "\n");
    return out;
}

// --------------------------------------------------------------- dimension

CommandResult cmd_dimension(const Config& cfg, const std::filesystem::path& out_dir) {
    DimensionReport rep = dimension_report(cfg.scaling, cfg.partition);
    const SampledFunction f = cfg.seed_on_grid();
    CommandResult out;
    out.report = header(cfg, "dimension");
    if (cfg.dimension.estimate) {
        if (cfg.grid < kMinBoxCountSamples)
            throw ConfigError({"$.grid_M: box counting needs at least 2^14+1 samples"});
        const FractalResult r = alpha_fractal(cfg.spec(), cfg.grid, cfg.tol, cfg.max_iter);
        const BoxCountEstimate e =
            box_count_estimate(r.values, cfg.dimension.min_scale, cfg.dimension.max_scale, cfg.dimension.n_scales);
        rep.estimator_D = e.dimension;
        rep.regression_r2 = e.r2;
        rep.scales_used = e.scales;
        out.report["box_counts"] = e.counts;
    }
    const bool collinear = data_collinear(f, cfg.partition);
    out.report["theoretical_D"] = rep.theoretical_D;
    out.report["sum_abs_alpha"] = rep.sum_abs_alpha;
    out.report["saturated"] = rep.saturated;
    out.report["estimator_D"] = nullable(rep.estimator_D);
    out.report["regression_r2"] = nullable(rep.regression_r2);
    out.report["scales_used"] = rep.scales_used;
    // Every config-expressible seed and base is Lipschitz; the remaining
    // hypotheses are the ones checked here.
    out.report["hypotheses"] = {{"collinear_data", collinear},
                                {"sum_abs_alpha_gt_1", rep.sum_abs_alpha > 1.0},
                                {"certified", rep.sum_abs_alpha > 1.0 && !collinear}};
    write_text(out_dir / "dimension.json", out.report.dump(2) + "\n");
    return out;
}

// ----------------------------------------------------------------- minimax

CommandResult cmd_minimax(const Config& cfg, const std::filesystem::path& out_dir) {
    if (cfg.minimax.degrees.empty()) throw ConfigError({"$.minimax: section with 'degrees' is required"});
    std::vector<std::pair<std::string, BaseOperator>> bases;
    if (const BaseOperator* op = linear_base(cfg)) bases.emplace_back(op->name(), *op);
    for (int n : cfg.minimax.bernstein) {
        const BaseOperator op = BaseOperator::bernstein(n);
        bases.emplace_back(op.name(), op);
    }
    if (bases.empty()) throw ConfigError({"$.base: minimax needs a linear base operator or a 'bernstein' list"});

    const std::size_t grid = kDefaultMinimaxGrid + 1;
    json rows = json::array();
    std::string csv = "function,m,n,base,e_mn,fractal_bound,witness,jackson_bound,jackson_corollary,degraded\n";
    bool all_hold = true;
    for (const FunctionSpec& fs : cfg.minimax.corpus) {
        const SampledFunction f = SampledFunction::sample(Interval(-kPi, kPi), grid, fs.fn);
        for (const auto& [m, n] : cfg.minimax.degrees) {
            const auto jk = jackson_order_for(m, n);
            const bool has_jb = jk.has_value();
            const double jb = has_jb ? 2.0 * modulus_of_continuity(f, kPi * std::sqrt(3.0) / jk.value_or(2)) : 0.0;
            const double jc = 2.0 * modulus_of_continuity(f, 2.0 * kPi * std::sqrt(3.0) / static_cast<double>(n + 2));
            for (const auto& [bname, op] : bases) {
                const FractalMinimaxBound fb = fractal_minimax_bound(f, m, n, cfg.partition, cfg.scaling, op, cfg.tol);
                all_hold = all_hold && fb.holds();
                json row{{"function", fs.label},     {"m", m},
                         {"n", n},                   {"base", bname},
                         {"e_mn", fb.e_mn},          {"fractal_bound", fb.bound},
                         {"witness", fb.witness},    {"slack", fb.slack},
                         {"witness_holds", fb.holds()}, {"jackson_bound", has_jb ? json(jb) : json(nullptr)},
                         {"jackson_corollary", jc},  {"degraded", fb.best.degraded}};
                if (!fb.best.note.empty()) row["note"] = fb.best.note;
                rows.push_back(row);
                csv += fs.label + "," + std::to_string(m) + "," + std::to_string(n) + "," + bname + "," +
                       format_double(fb.e_mn) + "," + format_double(fb.bound) + "," + format_double(fb.witness) + "," +
                       (has_jb ? format_double(jb) : "") + "," + format_double(jc) + "," +
                       (fb.best.degraded ? "1" : "0") + "\n";
            }
        }
    }
    CommandResult out;
    out.report = header(cfg, "minimax");
    out.report["rows"] = rows;
    out.report["witness_le_bound"] = all_hold;
    write_text(out_dir / "minimax.csv", csv);
    write_text(out_dir / "minimax.json", out.report.dump(2) + "\n");
    return out;
}

// ------------------------------------------------------------------ verify

std::vector<Check> config_checks(const Config& cfg) {
    const FractalSpec spec = cfg.spec();
    const FractalResult r = alpha_fractal(spec, cfg.grid, cfg.tol, cfg.max_iter);
    std::vector<Check> checks;

    checks.push_back({"self_referential_residual", self_referential_residual(r, spec), 0.0, check_slack(cfg.tol, 0.0)});

    const BoundCheck pb = check_perturbation_bound(spec, r);
    checks.push_back({"perturbation_bound", pb.lhs, pb.rhs, pb.slack});

    // The discrete solution is defined only at grid nodes, so partition nodes
    // between samples are skipped and counted.
    Check nodes{"node_interpolation", 0.0, 0.0, 1e-6, 0};
    int off_grid = 0;
    for (double x : cfg.partition.nodes()) {
        const double t = (x - cfg.interval.lo) / r.values.step();
        if (std::abs(t - std::round(t)) > 1e-9) {
            ++off_grid;
            continue;
        }
        const auto j = static_cast<std::size_t>(std::round(t));
        merge_worst(nodes, std::abs(r.values[j] - spec.seed[j]), 0.0, 1e-6);
    }
    if (off_grid > 0) nodes.detail = std::to_string(off_grid) + " partition nodes off the grid not checked";
    checks.push_back(nodes);

    if (const BaseOperator* op = linear_base(cfg)) {
        const double s = cfg.scaling.sup_abs();
        const double k = s / (1.0 - s);
        const double fn = sup_norm(spec.seed);
        checks.push_back({"operator_distance_bound", sup_distance(r.values, spec.seed),
                          k * *op->id_minus_norm_bound() * fn, r.certified_gap + 1e-12 * std::max(1.0, fn)});
        if (op->fixes_constants()) {
            const SampledFunction one = SampledFunction::constant(cfg.interval, cfg.grid, 1.0);
            const FractalResult c =
                fractal_operator_apply(*op, one, cfg.partition, cfg.scaling, cfg.grid, cfg.tol, cfg.max_iter);
            checks.push_back({"constant_fixed_point", sup_distance(c.values, one), 0.0, 1e-9});
        }
    }
    return checks;
}

CommandResult cmd_verify(const Config& cfg, const std::filesystem::path& out_dir) {
    const std::vector<Check> checks = config_checks(cfg);
    CommandResult out;
    out.report = header(cfg, "verify");
    json list = json::array();
    bool ok = true;
    for (const Check& c : checks) {
        list.push_back(to_json(c));
        ok = ok && c.pass();
    }
    out.report["checks"] = list;
    out.report["n_checks"] = checks.size();
    out.report["passed"] = ok;
    out.exit_code = ok ? kExitOk : kExitVerifyFailed;
    write_text(out_dir / "verify.json", out.report.dump(2) + "\n");
    return out;
}

}  // namespace fractalfn::cli
