// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fractalfn/approx.hpp"
#include "fractalfn/cli/commands.hpp"
#include "fractalfn/cli/config.hpp"
#include "fractalfn/dimension.hpp"
#include "fractalfn/fractal.hpp"
#include "fractalfn/seeds.hpp"
#include "oracles.hpp"

using namespace fractalfn;
namespace fs = std::filesystem;

namespace {

const Interval kPeriod(-kPi, kPi);
const Interval kUnit(0.0, 1.0);
constexpr std::size_t kGrid12 = (std::size_t{1} << 12) + 1;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Tracks the worst lhs - rhs excess over a family of instances.
struct Worst {
    double excess = -INFINITY;
    std::string where;
    void add(double lhs, double rhs, const std::string& tag) {
        if (lhs - rhs > excess) {
            excess = lhs - rhs;
            where = tag;
        }
    }
    bool ok() const { return excess <= 0.0; }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

SampledFunction builtin(const std::string& name, const Interval& iv, std::size_t grid) {
    return seeds::sample_builtin(*seeds::find(name), iv, grid);
}

SampledFunction builtin_default(const std::string& name, std::size_t grid) {
    const auto b = *seeds::find(name);
    return seeds::sample_builtin(b, b.default_interval, grid);
}

std::mt19937_64& rng() {
    static std::mt19937_64 engine(977);
    return engine;
}

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

TrigPoly random_trig(int max_degree) {
    const auto d = static_cast<std::size_t>(integer(1, max_degree));
    std::vector<double> c(d), s(d);
    for (auto& v : c) v = uniform(-1.0, 1.0);
    for (auto& v : s) v = uniform(-1.0, 1.0);
    return TrigPoly(uniform(-1.0, 1.0), c, s);
}

ScalingVector random_scaling(std::size_t n, double bound) {
    std::vector<double> a(n);
    for (auto& v : a) v = uniform(-bound, bound);
    return ScalingVector(a);
}

// Interior nodes drawn from the grid so that every node is a sample.
Partition grid_aligned_partition(const Interval& iv, std::size_t grid, std::size_t n) {
    std::vector<int> cuts;
    while (cuts.size() + 1 < n) {
        const int c = integer(1, static_cast<int>(grid) - 2);
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    const double h = iv.length() / static_cast<double>(grid - 1);
    std::vector<double> nodes{iv.lo};
    for (int c : cuts) nodes.push_back(iv.lo + h * c);
    nodes.push_back(iv.hi);
    return Partition(nodes);
}

Outcome c1_degenerate() {
    Worst zero, same;
    double slowest = 0.0;
    for (const auto& name : seeds::names()) {
        const SampledFunction f = builtin_default(name, kGrid12);
        const Partition p = Partition::uniform(f.interval(), 7);
        for (int variant = 0; variant < 2; ++variant) {
            const auto t0 = std::chrono::steady_clock::now();
            const FractalSpec spec = variant == 0
                                         ? FractalSpec(f, p, ScalingVector::uniform(7, 0.0), BaseOperator::bernstein(5))
                                         : FractalSpec(f, p, ScalingVector::uniform(7, 0.7), f);
            const double d = sup_distance(alpha_fractal(spec, kGrid12, 1e-9).values, f);
            slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
            (variant == 0 ? zero : same).add(d, 1e-12, name);
        }
    }
    return {zero.ok() && same.ok() && slowest < 1.0,
            "alpha=0 excess " + fmt(zero.excess) + ", b=f excess " + fmt(same.excess) + ", slowest " + fmt(slowest) + " s"};
}

Outcome c2_residual() {
    Worst moderate;
    for (const auto& name : seeds::names()) {
        const SampledFunction f = builtin_default(name, kGrid12);
        for (std::size_t n : {2u, 3u, 5u, 8u}) {
            const Partition p = n % 2 == 0 ? Partition::uniform(f.interval(), n)
                                           : grid_aligned_partition(f.interval(), kGrid12, n);
            const FractalSpec spec(f, p, random_scaling(n, 0.5), BaseOperator::quadratic_dip_profile(f.interval()));
            const FractalResult r = alpha_fractal(spec, kGrid12, 1e-9);
            moderate.add(self_referential_residual(r, spec), 1e-4, name + " N=" + std::to_string(n));
        }
    }
    const std::size_t grid = (std::size_t{1} << 14) + 1;
    const SampledFunction fig = builtin("fig1", kUnit, grid);
    const FractalSpec spec(fig, Partition::uniform(kUnit, 10), ScalingVector::uniform(10, 0.9),
                           BaseOperator::quadratic_dip_profile(kUnit));
    const double fig_res = self_referential_residual(alpha_fractal(spec, grid, 1e-6), spec);
    return {moderate.ok() && fig_res <= 5e-3,
            "|alpha|<=0.5 worst excess " + fmt(moderate.excess) + " (" + moderate.where + "), fig1 residual " +
                fmt(fig_res)};
}

Outcome c3_perturbation_bound() {
    Worst w;
    for (int i = 0; i < 20; ++i) {
        const SampledFunction f = sample_trig(random_trig(5), kPeriod, kGrid12);
        const auto n = static_cast<std::size_t>(integer(2, 9));
        const Partition p = i % 3 == 0 ? Partition::uniform(kPeriod, n) : grid_aligned_partition(kPeriod, kGrid12, n);
        const BaseOperator op =
            i % 2 == 0 ? BaseOperator::quadratic_dip_profile(kPeriod) : BaseOperator::bernstein(integer(1, 20));
        const FractalSpec spec(f, p, random_scaling(n, 0.8), op);
        const BoundCheck b = check_perturbation_bound(spec, alpha_fractal(spec, kGrid12, 1e-9));
        w.add(b.lhs, b.rhs + 1e-6, "instance " + std::to_string(i) + " " + op.name());
    }
    return {w.ok(), "worst lhs - rhs - 1e-6 = " + fmt(w.excess) + " (" + w.where + ")"};
}

Outcome c4_constant() {
    Worst w;
    const SampledFunction one = SampledFunction::constant(kUnit, kGrid12, 1.0);
    const std::vector<ScalingVector> set{ScalingVector::uniform(5, 0.5), ScalingVector::uniform(5, -0.9),
                                         ScalingVector({0.9, -0.2, 0.4, -0.7, 0.1}), random_scaling(5, 0.95)};
    for (int order : {1, 3, 8, 20, 60})
        for (const ScalingVector& a : set) {
            const FractalResult r = fractal_operator_apply(BaseOperator::bernstein(order), one,
                                                           Partition::uniform(kUnit, 5), a, kGrid12, default_tolerance(a));
            w.add(sup_distance(r.values, one), 1e-9, "B_" + std::to_string(order));
        }
    return {w.ok(), "worst ||F(1) - 1|| - 1e-9 = " + fmt(w.excess)};
}

Outcome c5_nodes() {
    Worst w;
    for (const auto& name : seeds::names()) {
        const SampledFunction f = builtin_default(name, kGrid12);
        for (std::size_t n : {2u, 4u, 6u, 16u}) {
            const Partition p = n == 6 ? grid_aligned_partition(f.interval(), kGrid12, n)
                                       : Partition::uniform(f.interval(), n);
            const FractalSpec spec(f, p, random_scaling(n, 0.5), BaseOperator::bernstein(integer(1, 12)));
            const FractalResult r = alpha_fractal(spec, kGrid12, 1e-9);
            for (double x : p.nodes()) {
                const auto j = static_cast<std::size_t>(std::lround((x - f.interval().lo) / r.values.step()));
                w.add(std::abs(r.values[j] - f[j]), 1e-6, name + " N=" + std::to_string(n));
            }
        }
    }
    return {w.ok(), "worst |f^a(x_i) - f(x_i)| - 1e-6 = " + fmt(w.excess)};
}

Outcome c6_dimension_solver() {
    const auto t0 = std::chrono::steady_clock::now();
    const double d10 = solve_box_dimension(ScalingVector::uniform(10, 0.9), AffineMapFamily(Partition::uniform(kUnit, 10))).value;
    const double d2 = solve_box_dimension(ScalingVector::uniform(2, 0.9), AffineMapFamily(Partition::uniform(kUnit, 2))).value;
    const double d1 = solve_box_dimension(ScalingVector({0.5, -0.3, 0.2}), AffineMapFamily(Partition({0.0, 0.2, 0.7, 1.0}))).value;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double e10 = std::abs(d10 - (1.0 + std::log10(9.0)));
    const double e2 = std::abs(d2 - (1.0 + std::log2(1.8)));
    return {e10 <= 1e-10 && e2 <= 1e-10 && d1 == 1.0 && secs < 1e-3,
            "errors " + fmt(e10) + ", " + fmt(e2) + ", sum<=1 gives " + fmt(d1) + ", " + fmt(secs * 1e3) + " ms"};
}

Outcome c7_box_counting() {
    const std::size_t grid = (std::size_t{1} << 16) + 1;
    const SampledFunction fig = builtin("fig1", kUnit, grid);
    const FractalSpec spec(fig, Partition::uniform(kUnit, 10), ScalingVector::uniform(10, 0.9),
                           BaseOperator::quadratic_dip_profile(kUnit));
    const BoxCountEstimate rough =
        box_count_estimate(alpha_fractal(spec, grid, 1e-6).values, std::ldexp(1.0, -10), std::ldexp(1.0, -4), 7);
    const std::size_t sgrid = (std::size_t{1} << 14) + 1;
    const SampledFunction smooth = builtin("exp01", kUnit, sgrid);
    const FractalSpec sspec(smooth, Partition::uniform(kUnit, 8), ScalingVector::uniform(8, 0.0), BaseOperator::bernstein(4));
    const BoxCountEstimate flat =
        box_count_estimate(alpha_fractal(sspec, sgrid, 1e-9).values, std::ldexp(1.0, -10), std::ldexp(1.0, -4), 7);
    const bool ok = std::abs(rough.dimension - 1.9542425) <= 0.15 && flat.dimension >= 0.95 && flat.dimension <= 1.1;
    return {ok, "fig1 estimate " + fmt(rough.dimension) + " (target 1.9542425 +- 0.15), smooth estimate " +
                    fmt(flat.dimension)};
}

Outcome c8_jackson() {
    Worst bound, nodes;
    std::vector<std::pair<std::string, SampledFunction>> corpus;
    for (const auto& b : seeds::catalogue())
        if (b.periodic) corpus.emplace_back(b.name, seeds::sample_builtin(b, kPeriod, kGrid12));
    corpus.emplace_back("trig", sample_trig(TrigPoly(0.5, {1.0, -0.25}, {0.0, 0.75}), kPeriod, kGrid12));
    for (const auto& [name, f] : corpus)
        for (int n : {2, 4, 8, 16}) {
            const JacksonReport r = jackson_error_report(f, n);
            bound.add(r.actual, r.bound + 1e-3, name + " n=" + std::to_string(n));
            nodes.add(r.node_error, 1e-8, name + " n=" + std::to_string(n));
        }
    return {bound.ok() && nodes.ok() && corpus.size() >= 4,
            std::to_string(corpus.size()) + " functions, bound excess " + fmt(bound.excess) + ", node excess " +
                fmt(nodes.excess)};
}

Outcome c9_minimax_oracles() {
    double worst_one = 0.0, worst_agree = 0.0, worst_self = 0.0;
    for (std::size_t m = 0; m <= 6; ++m) {
        const auto fn = [m](double x) { return std::cos(static_cast<double>(m + 1) * x); };
        const double exchange = minimax_trig(SampledFunction::sample(kPeriod, kGrid12, fn), m).error;
        std::vector<double> values(kDefaultMinimaxGrid);
        for (std::size_t i = 0; i < values.size(); ++i)
            values[i] = fn(-kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(values.size()));
        const double brute = oracle::trig_minimax_descent(values, m, 31 + m);
        worst_one = std::max({worst_one, std::abs(exchange - 1.0), std::abs(brute - 1.0)});
        worst_agree = std::max(worst_agree, std::abs(exchange - brute));
    }
    for (int i = 0; i < 5; ++i) {
        const TrigPoly t = random_trig(5);
        worst_self = std::max(worst_self, minimax_trig(sample_trig(t, kPeriod, kGrid12), t.degree()).error);
    }
    const AlgebraicRational r(kUnit, {1.0, 0.5, -0.25}, {1.0, 0.3});
    worst_self = std::max(worst_self,
                          minimax_rational_algebraic(SampledFunction::sample(kUnit, 1025, [&r](double x) { return r(x); }), 2, 1).error);
    return {worst_one <= 1e-3 && worst_agree <= 1e-3 && worst_self <= 1e-9,
            "|E - 1| " + fmt(worst_one) + ", exchange vs oracle " + fmt(worst_agree) + ", self-approximation " +
                fmt(worst_self)};
}

Outcome c10_witness(const fs::path& out_dir) {
    const cli::Config cfg = cli::load_config((fs::path(FRACTALFN_FIXTURES_DIR) / "minimax_table.json").string());
    const cli::CommandResult res = cli::cmd_minimax(cfg, out_dir);
    Worst w;
    std::size_t rows = 0;
    for (const auto& row : res.report["rows"]) {
        ++rows;
        w.add(row["witness"].get<double>(), row["fractal_bound"].get<double>() + 1e-4,
              row["function"].get<std::string>() + " (" + std::to_string(row["m"].get<int>()) + "," +
                  std::to_string(row["n"].get<int>()) + ") " + row["base"].get<std::string>());
    }
    return {w.ok() && rows > 0, std::to_string(rows) + " rows, worst excess " + fmt(w.excess) + " (" + w.where + ")"};
}

Outcome c11_corrected_chain() {
    Worst chain;
    bool trend = true;
    std::string trend_fail;
    const Partition p = Partition::uniform(kUnit, 4);
    const ScalingVector a = ScalingVector::uniform(4, 0.5);
    const std::vector<std::pair<std::string, std::function<double(double)>>> corpus{
        {"exp01", seeds::find("exp01")->fn},
        {"sin", [](double x) { return std::sin(x); }},
        {"1/(1+x^2)", [](double x) { return 1.0 / (1.0 + x * x); }}};
    for (const auto& [name, fn] : corpus) {
        const CorrectedChainReport rep =
            corrected_chain_check(SampledFunction::sample(kUnit, kGrid12, fn), 2, 1, p, a, {4, 8, 16, 32}, 1e-9);
        for (const ChainRow& row : rep.rows) chain.add(row.lhs, row.rhs + rep.slack, name + " n=" + std::to_string(row.order));
        if (!rep.trend_ok) {
            trend = false;
            trend_fail += " " + name;
        }
    }
    return {chain.ok() && trend,
            "chain excess " + fmt(chain.excess) + (trend ? ", trend ok" : ", trend fails for" + trend_fail)};
}

Outcome c12_lipschitz() {
    Worst dist;
    double worst_hom = 0.0;
    bool saw_19 = false;
    const double tol = 1e-9;
    for (int i = 0; i < 10; ++i) {
        const SampledFunction f = sample_trig(random_trig(4), kPeriod, kGrid12);
        const SampledFunction g = sample_trig(random_trig(4), kPeriod, kGrid12);
        const ScalingVector a = i < 3 ? ScalingVector::uniform(5, i == 0 ? 0.9 : -0.9) : random_scaling(5, 0.85);
        const LipschitzReport rep =
            check_lipschitz_process(f, g, Partition::uniform(kPeriod, 5), a, integer(1, 16), kGrid12, tol);
        saw_19 = saw_19 || std::abs(rep.constant - 19.0) < 1e-12;
        dist.add(rep.distance.lhs, rep.distance.rhs + 1e-6, "pair " + std::to_string(i));
        worst_hom = std::max(worst_hom, rep.homogeneity_error);
    }
    return {dist.ok() && worst_hom <= 2.0 * tol && saw_19,
            "distance excess " + fmt(dist.excess) + ", homogeneity " + fmt(worst_hom) + " (limit 2e-9)"};
}

Outcome c13_preserving() {
    const SampledFunction f = builtin("fig1", kUnit, kGrid12);
    const PreservingSequenceReport rep = dimension_preserving_sequence(
        f, Partition::uniform(kUnit, 10), ScalingVector::uniform(10, 0.3), {4, 8, 16}, 1e-9);
    bool identical = !rep.members.empty();
    std::string dists;
    for (const PreservingMember& m : rep.members) {
        identical = identical && m.theoretical_D == rep.members.front().theoretical_D;
        dists += " " + fmt(m.distance);
    }
    return {identical && rep.distance_trend_ok(),
            "D = " + fmt(rep.members.front().theoretical_D) + (identical ? " for all members" : " varies") +
                ", distances" + dists};
}

Outcome c14_determinism(const fs::path& out_dir) {
    const fs::path fixtures = FRACTALFN_FIXTURES_DIR;
    const auto t0 = std::chrono::steady_clock::now();
    const cli::CommandResult a = cli::cmd_verify_suite("full", fixtures, out_dir / "a");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const cli::CommandResult b = cli::cmd_verify_suite("full", fixtures, out_dir / "b");
    const bool same = a.report.dump(2) == b.report.dump(2);
    return {same && secs < 300.0, std::string(same ? "identical" : "different") + " JSON, " +
                                      std::to_string(a.report["n_checks"].get<int>()) + " checks, one run " +
                                      fmt(secs) + " s"};
}

}  // namespace

int main() {
    const fs::path scratch = fs::temp_directory_path() / "fractalfn_acceptance";
    fs::remove_all(scratch);
    fs::create_directories(scratch / "a");
    fs::create_directories(scratch / "b");

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"degenerate exactness", c1_degenerate},
        {"self-referential residual", c2_residual},
        {"perturbation bound", c3_perturbation_bound},
        {"constant fixed point", c4_constant},
        {"node interpolation", c5_nodes},
        {"dimension solver", c6_dimension_solver},
        {"box-counting cross-check", c7_box_counting},
        {"Jackson bound", c8_jackson},
        {"minimax oracles", c9_minimax_oracles},
        {"fractal minimax witness", [&] { return c10_witness(scratch); }},
        {"corrected Bernstein chain", c11_corrected_chain},
        {"Lipschitz process", c12_lipschitz},
        {"dimension-preserving sequence", c13_preserving},
        {"determinism", [&] { return c14_determinism(scratch); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += o.pass ? 0 : 1;
        std::printf("criterion %2zu %s  %-30s %s [%.2f s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
