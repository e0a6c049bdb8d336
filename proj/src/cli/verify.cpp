#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "fractalfn/approx.hpp"
#include "fractalfn/cli/commands.hpp"
#include "fractalfn/dimension.hpp"
#include "fractalfn/fractal.hpp"
#include "fractalfn/seeds.hpp"

namespace fractalfn::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kSuiteGrid = 4097;
constexpr std::uint64_t kSuiteSeed = 20240611;

Check worst(const std::string& name) { return Check{name, 0.0, 0.0, 0.0, 0, {}}; }

const Interval kPeriod(-kPi, kPi);

SampledFunction builtin_on(const std::string& name, const Interval& iv, std::size_t grid = kSuiteGrid) {
    return seeds::sample_builtin(*seeds::find(name), iv, grid);
}

SampledFunction builtin_default(const std::string& name, std::size_t grid = kSuiteGrid) {
    const auto b = *seeds::find(name);
    return seeds::sample_builtin(b, b.default_interval, grid);
}

struct Rng {
    std::mt19937_64 engine{kSuiteSeed};
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
};

TrigPoly random_trig(Rng& rng, int max_degree) {
    const int d = rng.integer(1, max_degree);
    std::vector<double> cs(static_cast<std::size_t>(d)), sn(static_cast<std::size_t>(d));
    const double a0 = rng.uniform(-1.0, 1.0);
    for (int k = 0; k < d; ++k) {
        cs[static_cast<std::size_t>(k)] = rng.uniform(-1.0, 1.0);
        sn[static_cast<std::size_t>(k)] = rng.uniform(-1.0, 1.0);
    }
    return TrigPoly(a0, std::move(cs), std::move(sn));
}

Partition random_partition(Rng& rng, const Interval& iv, std::size_t n) {
    std::vector<double> w(n);
    double total = 0.0;
    for (double& x : w) total += (x = rng.uniform(0.5, 1.5));
    std::vector<double> nodes{iv.lo};
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) nodes.push_back(iv.lo + iv.length() * ((acc += w[i]) / total));
    nodes.push_back(iv.hi);
    return Partition(nodes);
}

ScalingVector random_scaling(Rng& rng, std::size_t n, double bound) {
    std::vector<double> a(n);
    for (double& x : a) x = rng.uniform(-bound, bound);
    return ScalingVector(a);
}

void degenerate_checks(std::vector<Check>& out) {
    Check zero = worst("degenerate_alpha_zero");
    Check same = worst("degenerate_base_equals_seed");
    for (const auto& name : seeds::names()) {
        const SampledFunction f = builtin_default(name);
        const Partition p = Partition::uniform(f.interval(), 10);
        const FractalSpec z(f, p, ScalingVector::uniform(10, 0.0), BaseOperator::bernstein(3));
        merge_worst(zero, sup_distance(alpha_fractal(z, kSuiteGrid, 1e-9).values, f), 0.0, 1e-12, name);
        const FractalSpec s(f, p, ScalingVector::uniform(10, 0.5), f);
        merge_worst(same, sup_distance(alpha_fractal(s, kSuiteGrid, 1e-9).values, f), 0.0, 1e-12, name);
    }
    out.push_back(zero);
    out.push_back(same);
}

void residual_checks(std::vector<Check>& out) {
    Check moderate = worst("residual_moderate_alpha");
    Check nodes = worst("node_interpolation");
    const std::vector<double> mixed{0.5, -0.3, 0.2, -0.5};
    for (const auto& name : seeds::names()) {
        const SampledFunction f = builtin_default(name);
        for (std::size_t n : {2u, 4u, 8u, 16u}) {
            std::vector<double> a(n);
            for (std::size_t i = 0; i < n; ++i) a[i] = mixed[i % mixed.size()];
            const FractalSpec spec(f, Partition::uniform(f.interval(), n), ScalingVector(a),
                                   BaseOperator::quadratic_dip_profile(f.interval()));
            const FractalResult r = alpha_fractal(spec, kSuiteGrid, 1e-9);
            const std::string tag = name + " N=" + std::to_string(n);
            merge_worst(moderate, self_referential_residual(r, spec), 0.0, 1e-4, tag);
            double node_err = 0.0;
            for (double x : spec.partition.nodes()) node_err = std::max(node_err, std::abs(r.values(x) - f(x)));
            merge_worst(nodes, node_err, 0.0, 1e-6, tag);
        }
    }
    out.push_back(moderate);
    out.push_back(nodes);

    const std::size_t grid = (std::size_t{1} << 14) + 1;
    const SampledFunction fig = builtin_on("fig1", Interval(0.0, 1.0), grid);
    const FractalSpec spec(fig, Partition::uniform(fig.interval(), 10), ScalingVector::uniform(10, 0.9),
                           BaseOperator::quadratic_dip_profile(fig.interval()));
    const FractalResult r = alpha_fractal(spec, grid, 1e-6);
    out.push_back({"residual_fig1", self_referential_residual(r, spec), 0.0, 5e-3});
}

void perturbation_checks(std::vector<Check>& out) {
    Rng rng;
    Check eq1 = worst("perturbation_bound_random");
    for (int i = 0; i < 20; ++i) {
        const TrigPoly t = random_trig(rng, 4);
        const SampledFunction f = sample_trig(t, kPeriod, kSuiteGrid);
        const auto n = static_cast<std::size_t>(rng.integer(2, 8));
        const Partition p = i % 2 == 0 ? Partition::uniform(kPeriod, n) : random_partition(rng, kPeriod, n);
        const ScalingVector a = random_scaling(rng, n, 0.8);
        const BaseOperator op =
            i % 2 == 0 ? BaseOperator::quadratic_dip_profile(kPeriod) : BaseOperator::bernstein(rng.integer(1, 12));
        const FractalSpec spec(f, p, a, op);
        const BoundCheck b = check_perturbation_bound(spec, alpha_fractal(spec, kSuiteGrid, 1e-9));
        merge_worst(eq1, b.lhs, b.rhs, 1e-6, "instance " + std::to_string(i) + " " + op.name());
    }
    out.push_back(eq1);

    Check dist = worst("operator_distance_bound");
    Check norm = worst("operator_norm_bound");
    const std::vector<std::pair<std::string, Interval>> seeds_used{
        {"sin", kPeriod}, {"exp01", Interval(0.0, 1.0)}, {"fig1", Interval(0.0, 1.0)}};
    for (const auto& [name, iv] : seeds_used) {
        const SampledFunction f = builtin_on(name, iv);
        for (const BaseOperator& op : {BaseOperator::bernstein(5), BaseOperator::quadratic_dip_profile(iv),
                                       BaseOperator::cubic_map(iv)}) {
            const OperatorNormReport rep = check_operator_norm_bounds(op, f, Partition::uniform(iv, 5),
                                                                      ScalingVector::uniform(5, 0.5), kSuiteGrid, 1e-9);
            merge_worst(dist, rep.distance.lhs, rep.distance.rhs, rep.distance.slack, name + " " + op.name());
            merge_worst(norm, rep.norm.lhs, rep.norm.rhs, rep.norm.slack, name + " " + op.name());
        }
    }
    out.push_back(dist);
    out.push_back(norm);

    Check constant = worst("constant_fixed_point");
    const Interval unit(0.0, 1.0);
    const SampledFunction one = SampledFunction::constant(unit, kSuiteGrid, 1.0);
    const std::vector<ScalingVector> scalings{ScalingVector::uniform(4, 0.3),
                                              ScalingVector({0.9, -0.5, 0.2, -0.8}),
                                              ScalingVector::uniform(4, -0.9)};
    for (int order : {1, 4, 16})
        for (const ScalingVector& a : scalings) {
            const FractalResult r = fractal_operator_apply(BaseOperator::bernstein(order), one,
                                                           Partition::uniform(unit, 4), a, kSuiteGrid,
                                                           default_tolerance(a));
            merge_worst(constant, sup_distance(r.values, one), 0.0, 1e-9, "B_" + std::to_string(order));
        }
    out.push_back(constant);
}

void lipschitz_checks(std::vector<Check>& out) {
    Rng rng;
    rng.engine.discard(1000);
    Check lip = worst("lipschitz_process");
    Check hom = worst("positive_homogeneity");
    for (int i = 0; i < 10; ++i) {
        const SampledFunction f = sample_trig(random_trig(rng, 3), kPeriod, kSuiteGrid);
        const SampledFunction g = sample_trig(random_trig(rng, 3), kPeriod, kSuiteGrid);
        const ScalingVector a = i < 3 ? ScalingVector::uniform(4, 0.9) : random_scaling(rng, 4, 0.8);
        const double tol = 1e-9;
        const LipschitzReport rep = check_lipschitz_process(f, g, Partition::uniform(kPeriod, 4), a,
                                                            rng.integer(1, 10), kSuiteGrid, tol);
        merge_worst(lip, rep.distance.lhs, rep.distance.rhs, 1e-6, "pair " + std::to_string(i));
        merge_worst(hom, rep.homogeneity_error, 0.0, rep.homogeneity_slack, "pair " + std::to_string(i));
    }
    out.push_back(lip);
    out.push_back(hom);
}

void dimension_checks(std::vector<Check>& out) {
    Check closed = worst("dimension_closed_forms");
    const Interval unit(0.0, 1.0);
    for (const auto& [n, a] : std::vector<std::pair<std::size_t, double>>{{10, 0.9}, {2, 0.9}, {4, 0.5}, {7, 0.3}}) {
        const double d = solve_box_dimension(ScalingVector::uniform(n, a), AffineMapFamily(Partition::uniform(unit, n))).value;
        merge_worst(closed, std::abs(d - uniform_box_dimension(n * a, n)), 0.0, 1e-10,
                    "N=" + std::to_string(n));
    }
    const double flat = solve_box_dimension(ScalingVector::uniform(5, 0.2), AffineMapFamily(Partition::uniform(unit, 5))).value;
    merge_worst(closed, std::abs(flat - 1.0), 0.0, 0.0, "sum |alpha| = 1");
    out.push_back(closed);

    const SampledFunction f = builtin_on("fig1", unit);
    const Partition p = Partition::uniform(unit, 10);
    const PreservingSequenceReport rep =
        dimension_preserving_sequence(f, p, ScalingVector::uniform(10, 0.3), {4, 8, 16}, 1e-9);
    double spread = 0.0;
    double rise = 0.0;
    Check chain = worst("preserving_sequence_chain");
    for (std::size_t j = 0; j < rep.members.size(); ++j) {
        spread = std::max(spread, std::abs(rep.members[j].theoretical_D - rep.members[0].theoretical_D));
        if (j > 0) rise = std::max(rise, rep.members[j].distance - rep.members[j - 1].distance);
        merge_worst(chain, rep.members[j].distance, rep.members[j].chain_bound, rep.slack,
                    "n=" + std::to_string(rep.members[j].order));
    }
    out.push_back({"preserving_sequence_dimension_constant", spread, 0.0, 0.0, static_cast<int>(rep.members.size())});
    out.push_back({"preserving_sequence_distance_trend", rise, 0.0, rep.slack, static_cast<int>(rep.members.size())});
    out.push_back(chain);
}

void jackson_checks(std::vector<Check>& out) {
    Check bound = worst("jackson_bound");
    Check nodes = worst("jackson_node_interpolation");
    Check mono = worst("jackson_bound_monotone_in_n");
    for (const auto& name : {"sin", "abs_sin", "weierstrass_like", "fig1"}) {
        const SampledFunction f = builtin_on(name, kPeriod);
        double prev = std::numeric_limits<double>::infinity();
        for (int n : {2, 4, 8, 16}) {
            const JacksonReport rep = jackson_error_report(f, n);
            const std::string tag = std::string(name) + " n=" + std::to_string(n);
            merge_worst(bound, rep.actual, rep.bound, 1e-3, tag);
            merge_worst(nodes, rep.node_error, 0.0, 1e-8, tag);
            if (std::isfinite(prev)) merge_worst(mono, rep.bound, prev, 0.0, tag);
            prev = rep.bound;
        }
    }
    out.push_back(bound);
    out.push_back(nodes);
    out.push_back(mono);
}

void minimax_checks(std::vector<Check>& out) {
    Check eq = worst("minimax_equioscillation");
    for (std::size_t m = 0; m <= 6; ++m) {
        const SampledFunction f = SampledFunction::sample(kPeriod, kSuiteGrid, [m](double x) {
            return std::cos(static_cast<double>(m + 1) * x);
        });
        merge_worst(eq, std::abs(minimax_trig(f, m).error - 1.0), 0.0, 1e-3, "m=" + std::to_string(m));
    }
    out.push_back(eq);

    Rng rng;
    rng.engine.discard(2000);
    Check self = worst("minimax_self_approximation");
    Check mono = worst("minimax_monotone_in_degree");
    for (int i = 0; i < 5; ++i) {
        const TrigPoly t = random_trig(rng, 4);
        const SampledFunction f = sample_trig(t, kPeriod, kSuiteGrid);
        merge_worst(self, minimax_trig(f, t.degree()).error, 0.0, 1e-9, "instance " + std::to_string(i));
    }
    const SampledFunction abs_sin = builtin_on("abs_sin", kPeriod);
    double prev = minimax_trig(abs_sin, 0).error;
    for (std::size_t m = 1; m <= 6; ++m) {
        const double e = minimax_trig(abs_sin, m).error;
        merge_worst(mono, e, prev, 1e-9, "abs_sin m=" + std::to_string(m));
        prev = e;
    }
    out.push_back(self);
    out.push_back(mono);

    Check witness = worst("fractal_minimax_witness");
    const Partition p = Partition::uniform(kPeriod, 4);
    const ScalingVector a = ScalingVector::uniform(4, 0.3);
    for (const auto& name : {"sin", "abs_sin", "fig1", "weierstrass_like"}) {
        const SampledFunction f = builtin_on(name, kPeriod);
        for (const auto& [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 1}, {3, 3}})
            for (const BaseOperator& op : {BaseOperator::quadratic_dip_profile(kPeriod), BaseOperator::bernstein(8)}) {
                const FractalMinimaxBound b = fractal_minimax_bound(f, m, n, p, a, op, 1e-9);
                merge_worst(witness, b.witness, b.bound, 1e-4,
                            std::string(name) + " (" + std::to_string(m) + "," + std::to_string(n) + ") " + op.name());
            }
    }
    out.push_back(witness);
}

void chain_checks(std::vector<Check>& out) {
    Check chain = worst("corrected_bernstein_chain");
    Check trend = worst("corrected_bernstein_trend");
    const Interval unit(0.0, 1.0);
    const Partition p = Partition::uniform(unit, 4);
    const ScalingVector a = ScalingVector::uniform(4, 0.5);
    for (const auto& name : {"exp01", "fig1", "sin"}) {
        const SampledFunction f = builtin_on(name, unit);
        const CorrectedChainReport rep = corrected_chain_check(f, 2, 1, p, a, {4, 8, 16, 32}, 1e-9);
        for (const ChainRow& row : rep.rows)
            merge_worst(chain, row.lhs, row.rhs, rep.slack, std::string(name) + " n=" + std::to_string(row.order));
        for (std::size_t j = 1; j < rep.rows.size(); ++j)
            merge_worst(trend, rep.rows[j].bernstein_term, 0.95 * rep.rows[j - 1].bernstein_term, 0.0,
                        std::string(name) + " n=" + std::to_string(rep.rows[j].order));
    }
    out.push_back(chain);
    out.push_back(trend);

    Check density = worst("density_trend");
    const RationalTrig t(TrigPoly(0.0, {1.0}, {0.5}), TrigPoly(2.0, {1.0}, {}));
    const SampledFunction ts = SampledFunction::sample(kPeriod, kSuiteGrid, [&t](double x) { return t(x); });
    const std::vector<double> d =
        density_trend(ts, Partition::uniform(kPeriod, 4), ScalingVector::uniform(4, 0.5), {4, 8, 16, 32}, 1e-9);
    for (std::size_t j = 1; j < d.size(); ++j) merge_worst(density, d[j], d[j - 1], 0.0, "step " + std::to_string(j));
    out.push_back(density);
}

void nonneg_checks(std::vector<Check>& out) {
    Check gap = worst("nonneg_gap");
    Check sign = worst("nonneg_sign");
    const Partition p = Partition::uniform(kPeriod, 4);
    struct Case {
        std::string name;
        SampledFunction f;
        double eps;
        double alpha;
    };
    const std::vector<Case> cases{
        {"1+cos", SampledFunction::sample(kPeriod, kSuiteGrid, [](double x) { return 1.0 + std::cos(x); }), 0.1, 0.2},
        {"zero", SampledFunction::constant(kPeriod, kSuiteGrid, 0.0), 0.1, 0.2},
        {"abs_sin", builtin_on("abs_sin", kPeriod), 0.2, 0.05}};
    for (const Case& c : cases) {
        const NonnegApproximation r =
            nonneg_fractal_approx(c.f, c.eps, p, ScalingVector::uniform(4, c.alpha), BaseOperator::bernstein(8), 1e-9);
        merge_worst(gap, r.gap, c.eps, 0.0, c.name);
        merge_worst(sign, -r.approximant.min(), 0.0, 0.0, c.name);
    }
    out.push_back(gap);
    out.push_back(sign);
}

}  // namespace

std::vector<Check> full_suite_checks() {
    std::vector<Check> out;
    degenerate_checks(out);
    residual_checks(out);
    perturbation_checks(out);
    lipschitz_checks(out);
    dimension_checks(out);
    jackson_checks(out);
    minimax_checks(out);
    chain_checks(out);
    nonneg_checks(out);
    return out;
}

CommandResult cmd_verify_suite(const std::string& suite, const std::filesystem::path& fixtures_dir,
                               const std::filesystem::path& out_dir) {
    if (suite != "full") throw ConfigError({"--suite: unknown suite '" + suite + "' (known: full)"});
    std::vector<std::filesystem::path> fixtures;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(fixtures_dir, ec))
        if (entry.is_regular_file() && entry.path().extension() == ".json") fixtures.push_back(entry.path());
    if (ec) throw IoError("cannot list fixtures in '" + fixtures_dir.string() + "': " + ec.message());
    std::sort(fixtures.begin(), fixtures.end());

    std::vector<Check> checks = full_suite_checks();
    std::string hash_input = suite;
    json names = json::array();
    for (const auto& path : fixtures) {
        const Config cfg = load_config(path.string());
        hash_input += cfg.hash;
        const std::string stem = path.stem().string();
        names.push_back(stem);
        for (Check c : config_checks(cfg)) {
            c.name = "fixture:" + stem + ":" + c.name;
            checks.push_back(std::move(c));
        }
    }

    CommandResult out;
    out.report = json{{"command", "verify"}, {"suite", suite}, {"version", kVersion},
                      {"config_hash", sha256_hex(hash_input)}, {"fixtures", names}};
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
