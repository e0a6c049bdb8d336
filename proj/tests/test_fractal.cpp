#include <cmath>
#include <cstdlib>
#include <random>

#include "doctest.h"

#include "fractalfn/fractal.hpp"
#include "fractalfn/seeds.hpp"

using namespace fractalfn;

namespace {

const Interval kUnit(0.0, 1.0);
const Interval kPeriod(-kPi, kPi);

using Fn = std::function<double(double)>;

// f^alpha(x) = f(x) + sum_{k>=1} (alpha_{i_0} ... alpha_{i_{k-1}}) (f - b)(y_k) with
// y_{k+1} = L_{i_k}^{-1}(y_k), evaluated pointwise from the exact f and b. The
// inverse maps expand, so position rounding grows like prod(1/a_i); depth must
// balance that growth against the truncation error |alpha|^depth.
double fif_oracle(const Fn& f, const Fn& b, const std::vector<double>& nodes, const std::vector<double>& alpha,
                  double x, int depth) {
    const double lo = nodes.front(), hi = nodes.back();
    double total = f(x);
    double weight = 1.0;
    double y = x;
    for (int k = 0; k < depth; ++k) {
        std::size_t i = 0;
        while (i + 2 < nodes.size() && y >= nodes[i + 1]) ++i;
        weight *= alpha[i];
        y = lo + (y - nodes[i]) * (hi - lo) / (nodes[i + 1] - nodes[i]);
        y = std::clamp(y, lo, hi);
        total += weight * (f(y) - b(y));
    }
    return total;
}

// Same series for a uniform partition with N pieces, tracking grid node j of
// lo + j h, h = (hi - lo) / cells, in integers: L_i^{-1} sends j to N j - i cells.
double fif_oracle_uniform(const Fn& f, const Fn& b, const Interval& iv, long cells, long pieces,
                          const std::vector<double>& alpha, long j, int depth) {
    const auto at = [&](long k) { return iv.lo + iv.length() * static_cast<double>(k) / static_cast<double>(cells); };
    double total = f(at(j));
    double weight = 1.0;
    for (int k = 0; k < depth; ++k) {
        const long i = std::min(pieces - 1, pieces * j / cells);
        weight *= alpha[static_cast<std::size_t>(i)];
        j = pieces * j - i * cells;
        total += weight * (f(at(j)) - b(at(j)));
    }
    return total;
}

double nu(double x) { return 1.0 + x * (x - 1.0); }

double bernstein_at(const Fn& f, int n, double x) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k) s += f(static_cast<double>(k) / n) * binomial(n, k) * std::pow(x, k) * std::pow(1 - x, n - k);
    return s;
}

SampledFunction random_smooth(std::mt19937_64& rng, const Interval& iv, std::size_t m) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    return SampledFunction::sample(iv, m, [=](double x) {
        const double t = (x - iv.lo) / iv.length();
        return a + b * std::cos(3.0 * t) + c * std::sin(5.0 * t) + d * t * t;
    });
}

}  // namespace

TEST_CASE("engine matches the pointwise series on uniform partitions") {
    // For a uniform partition L_i^{-1} maps grid nodes onto grid nodes, so the
    // grid values are samples of f^alpha up to the certified gap.
    SUBCASE("fig1 seed, alpha 0.9, quadratic profile") {
        const std::size_t m = 4097;
        const SampledFunction f = SampledFunction::sample(kUnit, m, seeds::fig1);
        const Partition p = Partition::uniform(kUnit, 10);
        const std::vector<double> alpha(10, 0.9);
        const FractalSpec spec(f, p, ScalingVector(alpha), BaseOperator::quadratic_dip_profile(kUnit, m));
        const FractalResult r = alpha_fractal(spec, m, 1e-10);
        const Fn b = [](double x) { return nu(x) * seeds::fig1(x); };
        for (std::size_t j = 0; j < m; j += 97)
            CHECK(std::abs(r.values[j] - fif_oracle_uniform(seeds::fig1, b, kUnit, 4096, 10, alpha,
                                                             static_cast<long>(j), 400)) <= r.certified_gap + 1e-9);
    }
    SUBCASE("sin seed on [-pi, pi], mixed alpha, Bernstein base") {
        const std::size_t m = 2049;
        const Fn fn = [](double x) { return std::sin(x); };
        const SampledFunction f = SampledFunction::sample(kPeriod, m, fn);
        const Partition p = Partition::uniform(kPeriod, 4);
        const std::vector<double> alpha{0.4, -0.3, 0.5, -0.2};
        const FractalSpec spec(f, p, ScalingVector(alpha), BaseOperator::bernstein(8));
        const FractalResult r = alpha_fractal(spec, m, 1e-12);
        const Fn b = [&](double x) {
            return bernstein_at([&](double t) { return fn(kPeriod.lo + t * kPeriod.length()); }, 8,
                                (x - kPeriod.lo) / kPeriod.length());
        };
        for (std::size_t j = 0; j < m; j += 31)
            CHECK(std::abs(r.values[j] - fif_oracle_uniform(fn, b, kPeriod, 2048, 4, alpha, static_cast<long>(j), 80)) <=
                  1e-10);
    }
}

TEST_CASE("engine converges to the series on a non-uniform partition as the grid is refined") {
    const Fn fn = [](double x) { return std::exp(x) * std::cos(2.0 * x); };
    const std::vector<double> nodes{0.0, 0.15, 0.45, 0.7, 1.0};
    const std::vector<double> alpha{0.3, -0.4, 0.25, 0.45};
    const Fn b = [&](double x) { return nu(x) * fn(x); };
    double prev = 1e300;
    for (std::size_t m : {1025u, 4097u, 16385u}) {
        const SampledFunction f = SampledFunction::sample(kUnit, m, fn);
        const FractalSpec spec(f, Partition(nodes), ScalingVector(alpha), BaseOperator::quadratic_dip_profile(kUnit, m));
        const FractalResult r = alpha_fractal(spec, m, 1e-12);
        double err = 0.0;
        for (int k = 0; k <= 200; ++k) {
            const double x = k / 200.0;
            err = std::max(err, std::abs(r.values(x) - fif_oracle(fn, b, nodes, alpha, x, 30)));
        }
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("degenerate cases are exact") {
    for (const auto& seed : seeds::catalogue()) {
        const SampledFunction f = seeds::sample_builtin(seed, seed.default_interval, 4097);
        const Partition p = Partition::uniform(f.interval(), 7);
        const FractalResult z = alpha_fractal(FractalSpec(f, p, ScalingVector::uniform(7, 0.0), BaseOperator::bernstein(4)), 4097, 1e-9);
        CHECK(z.iterations == 1);
        CHECK(sup_distance(z.values, f) == 0.0);
        const FractalSpec same(f, p, ScalingVector::uniform(7, 0.8), f);
        const FractalResult s = alpha_fractal(same, 4097, 1e-9);
        CHECK(sup_distance(s.values, f) == 0.0);
        CHECK(self_referential_residual(z, FractalSpec(f, p, ScalingVector::uniform(7, 0.0), BaseOperator::bernstein(4))) == 0.0);
    }
}

TEST_CASE("constants are fixed when L(1) = 1") {
    const SampledFunction one = SampledFunction::constant(kUnit, 4097, 1.0);
    for (const ScalingVector& a : {ScalingVector::uniform(5, 0.9), ScalingVector({-0.95, 0.2, 0.6, -0.3, 0.0})})
        for (const BaseOperator& op : {BaseOperator::bernstein(3), BaseOperator::cubic_map(kUnit, 4097)}) {
            const double tol = default_tolerance(a);
            const FractalResult r = fractal_operator_apply(op, one, Partition({0.0, 0.1, 0.35, 0.6, 0.8, 1.0}), a, 4097, tol);
            CHECK(sup_distance(r.values, one) <= tol);
        }
}

TEST_CASE("default tolerance") {
    CHECK(default_tolerance(ScalingVector::uniform(3, 0.5)) == 1e-9);
    CHECK(default_tolerance(ScalingVector({0.1, -0.51})) == 1e-6);
}

TEST_CASE("fig1 configuration converges with a small residual") {
    const std::size_t m = (std::size_t{1} << 14) + 1;
    const SampledFunction f = SampledFunction::sample(kUnit, m, seeds::fig1);
    const FractalSpec spec(f, Partition::uniform(kUnit, 10), ScalingVector::uniform(10, 0.9),
                           BaseOperator::quadratic_dip_profile(kUnit));
    const FractalResult r = alpha_fractal(spec, m, 1e-6);
    CHECK(self_referential_residual(r, spec) <= 5e-3);
    const BoundCheck pb = check_perturbation_bound(spec, r);
    CHECK(pb.lhs > 0.0);
    CHECK(pb.rhs > 0.0);
    CHECK(pb.lhs <= pb.rhs + 1e-6);
}

TEST_CASE("endpoint mismatch and shape errors") {
    const SampledFunction f = SampledFunction::sample(kUnit, 257, [](double x) { return x; });
    const SampledFunction b = SampledFunction::sample(kUnit, 257, [](double x) { return x + 0.5; });
    CHECK_THROWS_AS(FractalSpec(f, Partition::uniform(kUnit, 4), ScalingVector::uniform(4, 0.3), b), InvariantError);
    CHECK_THROWS_AS(FractalSpec(f, Partition::uniform(kUnit, 4), ScalingVector::uniform(3, 0.3), f), InvariantError);
    CHECK_THROWS_AS(FractalSpec(f, Partition::uniform(Interval(0.0, 2.0), 4), ScalingVector::uniform(4, 0.3), f),
                    InvariantError);
    const FractalSpec ok(f, Partition::uniform(kUnit, 4), ScalingVector::uniform(4, 0.3), BaseOperator::cubic_map(kUnit));
    CHECK_THROWS_AS(alpha_fractal(ok, 8, 1e-9), DomainError);
}

TEST_CASE("non-convergence reports the final step") {
    const SampledFunction f = SampledFunction::sample(kUnit, 1025, [](double x) { return std::sin(7 * x); });
    const FractalSpec spec(f, Partition({0.0, 0.3, 1.0}), ScalingVector::uniform(2, 0.9), BaseOperator::cubic_map(kUnit, 1025));
    try {
        (void)alpha_fractal(spec, 1025, 1e-12, 3);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.iterations() == 3);
        CHECK(e.final_step() > 0.0);
    }
}

TEST_CASE("property: Picard steps contract by |alpha| after the first sweep") {
    const SampledFunction f = SampledFunction::sample(kUnit, 2049, [](double x) { return std::exp(x) * std::sin(9 * x); });
    const FractalSpec spec(f, Partition({0.0, 0.13, 0.5, 0.77, 1.0}), ScalingVector({0.6, -0.7, 0.5, -0.3}),
                           BaseOperator::quadratic_dip_profile(kUnit, 2049));
    auto step_after = [&](int k) {
        try {
            (void)alpha_fractal(spec, 2049, 1e-300, k);
        } catch (const ConvergenceError& e) {
            return e.final_step();
        }
        return 0.0;
    };
    double prev = step_after(2);
    for (int k = 3; k <= 12; ++k) {
        const double s = step_after(k);
        CHECK(s <= (0.7 + 1e-3) * prev);
        prev = s;
    }
}

TEST_CASE("property: node interpolation for moderate alpha") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    std::uniform_int_distribution<int> cells(300, 1200);
    std::uniform_real_distribution<double> w(0.5, 1.5);
    for (int trial = 0; trial < 10; ++trial) {
        // Grid-aligned nodes: f^alpha is known there without interpolation.
        std::vector<int> idx{0};
        for (int i = 0; i < 5; ++i) idx.push_back(idx.back() + cells(rng));
        const Interval iv(0.0, 2.0);
        const std::size_t m = static_cast<std::size_t>(idx.back()) + 1;
        std::vector<double> nodes;
        for (int k : idx) nodes.push_back(iv.lo + iv.length() * k / idx.back());
        nodes.back() = iv.hi;
        const SampledFunction f = random_smooth(rng, iv, m);
        std::vector<double> a(5);
        for (double& x : a) x = u(rng);
        const FractalSpec spec(f, Partition(nodes), ScalingVector(a), BaseOperator::bernstein(1 + trial));
        const FractalResult r = alpha_fractal(spec, m, 1e-9);
        for (int k : idx) CHECK(std::abs(r.values[static_cast<std::size_t>(k)] - f[static_cast<std::size_t>(k)]) <= 1e-6);
        CHECK(self_referential_residual(r, spec) <= 1e-4);
    }
    for (int trial = 0; trial < 10; ++trial) {
        // Off-grid nodes: the discrete fixed point is off by at most
        // s/(1-s) times the read error of g - b, and the final read adds the
        // oscillation of the cell holding the node.
        std::vector<double> nodes{0.0};
        for (int i = 0; i < 5; ++i) nodes.push_back(nodes.back() + w(rng));
        const Interval iv(0.0, nodes.back());
        const SampledFunction f = random_smooth(rng, iv, 4097);
        std::vector<double> a(5);
        for (double& x : a) x = u(rng);
        const FractalSpec spec(f, Partition(nodes), ScalingVector(a), BaseOperator::bernstein(1 + trial));
        const FractalResult r = alpha_fractal(spec, 4097, 1e-9);
        const SampledFunction d = r.values - spec.base_function();
        double read_error = 0.0;
        for (std::size_t k = 0; k + 1 < d.size(); ++k) read_error = std::max(read_error, std::abs(d[k + 1] - d[k]));
        const double s = spec.scaling.sup_abs();
        for (double x : nodes) {
            const auto k = std::min<std::size_t>(4095, static_cast<std::size_t>((x - iv.lo) / r.values.step()));
            const double cell = std::abs(r.values[k + 1] - r.values[k]);
            CHECK(std::abs(r.values(x) - f(x)) <= 1e-6 + cell + s / (1.0 - s) * read_error);
        }
    }
}

TEST_CASE("property: linearity of F^alpha for a fixed Bernstein base") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const Partition p({0.0, 0.2, 0.55, 1.0});
    const ScalingVector a({0.5, -0.4, 0.3});
    const BaseOperator op = BaseOperator::bernstein(6);
    const double tol = 1e-10;
    for (int trial = 0; trial < 5; ++trial) {
        const SampledFunction f = random_smooth(rng, kUnit, 2049);
        const SampledFunction g = random_smooth(rng, kUnit, 2049);
        const double s = u(rng), c = u(rng);
        const SampledFunction lhs = fractal_operator_apply(op, f * s + g * c, p, a, 2049, tol).values;
        const SampledFunction rhs =
            fractal_operator_apply(op, f, p, a, 2049, tol).values * s + fractal_operator_apply(op, g, p, a, 2049, tol).values * c;
        CHECK(sup_distance(lhs, rhs) <= 2.0 * tol * (std::abs(s) + std::abs(c) + 1.0) + 1e-12);
    }
}

TEST_CASE("property: doubling the grid moves f^alpha by at most 4x the interpolation estimate") {
    std::mt19937_64 rng(29);
    const Partition p({0.0, 0.3, 0.45, 1.0});
    const ScalingVector a({0.4, -0.35, 0.2});
    for (int trial = 0; trial < 5; ++trial) {
        const SampledFunction fine_seed = random_smooth(rng, kUnit, 4097);
        const SampledFunction coarse_seed = fine_seed.resampled(2049);
        const FractalResult coarse = alpha_fractal(FractalSpec(coarse_seed, p, a, BaseOperator::bernstein(4)), 2049, 1e-12);
        const FractalResult fine = alpha_fractal(FractalSpec(fine_seed, p, a, BaseOperator::bernstein(4)), 4097, 1e-12);
        double change = 0.0;
        for (std::size_t j = 0; j < coarse.values.size(); ++j)
            change = std::max(change, std::abs(coarse.values[j] - fine.values[2 * j]));
        CHECK(change <= 4.0 * interpolation_error_estimate(coarse.values) + 1e-11);
    }
}

TEST_CASE("operator norm bounds for the quadratic profile") {
    const SampledFunction f = SampledFunction::sample(kUnit, 4097, [](double x) { return std::sin(kPi * x); });
    const OperatorNormReport rep = check_operator_norm_bounds(BaseOperator::quadratic_dip_profile(kUnit, 4097), f,
                                                              Partition::uniform(kUnit, 4), ScalingVector::uniform(4, 0.5),
                                                              4097, 1e-10);
    CHECK(rep.factor == doctest::Approx(1.0));
    CHECK(rep.id_minus_norm == doctest::Approx(0.25));
    CHECK(rep.distance.rhs == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(rep.all_hold());

    const SampledFunction one = SampledFunction::constant(kUnit, 4097, 1.0);
    const OperatorNormReport c = check_operator_norm_bounds(BaseOperator::bernstein(3), one, Partition::uniform(kUnit, 4),
                                                            ScalingVector::uniform(4, 0.5), 4097, 1e-10);
    CHECK(c.distance.lhs <= 1e-10);
    CHECK(c.all_hold());

    const OperatorNormReport z = check_operator_norm_bounds(BaseOperator::bernstein(3), f, Partition::uniform(kUnit, 4),
                                                            ScalingVector::uniform(4, 0.0), 4097, 1e-10);
    CHECK(z.distance.lhs == 0.0);
    CHECK_THROWS_AS(check_operator_norm_bounds(BaseOperator::explicit_base(f), f, Partition::uniform(kUnit, 4),
                                               ScalingVector::uniform(4, 0.5), 4097, 1e-10),
                    PreconditionError);
}

TEST_CASE("perturbation bound degenerate cases") {
    const SampledFunction f = SampledFunction::sample(kUnit, 1025, [](double x) { return std::cos(3 * x); });
    const Partition p = Partition::uniform(kUnit, 4);
    const FractalSpec same(f, p, ScalingVector::uniform(4, 0.6), f);
    const BoundCheck a = check_perturbation_bound(same, alpha_fractal(same, 1025, 1e-9));
    CHECK(a.lhs == 0.0);
    CHECK(a.rhs == 0.0);
    const FractalSpec zero(f, p, ScalingVector::uniform(4, 0.0), BaseOperator::bernstein(2));
    const BoundCheck z = check_perturbation_bound(zero, alpha_fractal(zero, 1025, 1e-9));
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
}

TEST_CASE("Bernstein family: affine seeds collapse, others are multi-valued") {
    const Partition p = Partition::uniform(kUnit, 3);
    const ScalingVector a = ScalingVector::uniform(3, 0.5);
    const SampledFunction aff = SampledFunction::sample(kUnit, 1025, [](double x) { return 3.0 * x - 1.0; });
    for (const FractalResult& r : bernstein_family(aff, p, a, {1, 4, 9}, 1025, 1e-10))
        CHECK(sup_distance(r.values, aff) <= 1e-9);
    const SampledFunction f = SampledFunction::sample(kUnit, 1025, [](double x) { return std::exp(2 * x); });
    const auto fam = bernstein_family(f, p, a, {2, 8}, 1025, 1e-10);
    CHECK(sup_distance(fam[0].values, fam[1].values) > 10 * 1e-10);
}

TEST_CASE("Lipschitz process and positive homogeneity") {
    const Partition p = Partition::uniform(kPeriod, 4);
    const SampledFunction f = SampledFunction::sample(kPeriod, 2049, [](double x) { return std::sin(x) + 0.3 * std::cos(2 * x); });
    const SampledFunction g = SampledFunction::sample(kPeriod, 2049, [](double x) { return std::cos(x); });
    const LipschitzReport same = check_lipschitz_process(f, f, p, ScalingVector::uniform(4, 0.7), 5, 2049, 1e-9);
    CHECK(same.distance.lhs == 0.0);
    CHECK(same.distance.rhs == 0.0);
    const LipschitzReport rough = check_lipschitz_process(f, g, p, ScalingVector::uniform(4, 0.9), 5, 2049, 1e-9);
    CHECK(rough.constant == doctest::Approx(19.0));
    CHECK(rough.distance.lhs <= rough.distance.rhs + 1e-6);
    CHECK(rough.homogeneity_error <= 2e-9);
    CHECK(rough.all_hold());
}

TEST_CASE("results do not depend on the worker count") {
    const SampledFunction f = SampledFunction::sample(kUnit, 65537, seeds::fig1);
    const FractalSpec spec(f, Partition({0.0, 0.2, 0.7, 1.0}), ScalingVector({0.8, -0.6, 0.7}),
                           BaseOperator::quadratic_dip_profile(kUnit));
    ::setenv("FRACTALFN_THREADS", "1", 1);
    const FractalResult one = alpha_fractal(spec, 65537, 1e-8);
    ::setenv("FRACTALFN_THREADS", "5", 1);
    const FractalResult five = alpha_fractal(spec, 65537, 1e-8);
    ::unsetenv("FRACTALFN_THREADS");
    CHECK(one.iterations == five.iterations);
    CHECK(std::equal(one.values.values().begin(), one.values.values().end(), five.values.values().begin()));
}
