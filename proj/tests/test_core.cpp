#include <cmath>
#include <random>

#include "doctest.h"

#include "fractalfn/core.hpp"

using namespace fractalfn;

TEST_CASE("affine maps of a uniform partition") {
    const AffineMapFamily maps(Partition::uniform(Interval(0.0, 1.0), 4));
    REQUIRE(maps.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(maps.slopes()[i] == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(maps.offsets()[i] == doctest::Approx(0.25 * static_cast<double>(i)).epsilon(1e-15));
    }
}

TEST_CASE("affine maps of {-pi, 0, pi}") {
    const double pi = 3.14159265358979323846;
    const AffineMapFamily maps(Partition({-pi, 0.0, pi}));
    CHECK(std::abs(maps.slopes()[0] - 0.5) < 1e-15);
    CHECK(std::abs(maps.offsets()[0] + pi / 2) < 1e-15);
    CHECK(std::abs(maps.slopes()[1] - 0.5) < 1e-15);
    CHECK(std::abs(maps.offsets()[1] - pi / 2) < 1e-15);
}

TEST_CASE("partition rejects repeated or decreasing nodes") {
    CHECK_THROWS_AS(Partition({0.0, 0.5, 0.5, 1.0}), InvariantError);
    CHECK_THROWS_AS(Partition({0.0, 0.6, 0.4, 1.0}), InvariantError);
    CHECK_THROWS(Partition({0.0, 1.0}));
}

TEST_CASE("scaling factors must lie strictly inside (-1, 1)") {
    CHECK_THROWS(ScalingVector({0.5, 1.0}));
    CHECK_THROWS(ScalingVector({-1.0, 0.5}));
    const ScalingVector a({0.5, -0.7, 0.1});
    CHECK(a.sup_abs() == 0.7);
    CHECK(a.sum_abs() == doctest::Approx(1.3));
}

TEST_CASE("locate uses zero-based left-closed subintervals, last one right-closed") {
    const Partition p = Partition::uniform(Interval(0.0, 1.0), 10);
    CHECK(locate_subinterval(p, 0.35) == 3);
    CHECK(locate_subinterval(p, 1.0) == 9);
    CHECK(locate_subinterval(p, p.node(3)) == 3);
    CHECK(locate_subinterval(p, 0.0) == 0);
    CHECK_THROWS_AS(locate_subinterval(p, 1.5), DomainError);
    CHECK_THROWS_AS(locate_subinterval(p, -0.1), DomainError);
}

TEST_CASE("property: L_i(L_i^{-1}(x)) = x and the slopes sum to 1") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> nodes{-2.0};
        for (int i = 0; i < 6; ++i) nodes.push_back(nodes.back() + u(rng));
        const Partition p(nodes);
        const AffineMapFamily maps(p);
        double slope_sum = 0.0;
        for (std::size_t i = 0; i < maps.size(); ++i) {
            slope_sum += maps.slopes()[i];
            for (int k = 0; k <= 10; ++k) {
                const double x = p.node(i) + (p.node(i + 1) - p.node(i)) * k / 10.0;
                CHECK(std::abs(maps.forward(i, maps.inverse(i, x)) - x) <= 1e-12 * std::max(1.0, std::abs(x)));
            }
        }
        CHECK(std::abs(slope_sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("sup norms") {
    const double pi = 3.14159265358979323846;
    const Interval iv(-pi, pi);
    CHECK(sup_norm(SampledFunction::constant(iv, 101, 0.0)) == 0.0);
    const SampledFunction s = SampledFunction::sample(iv, 4097, [](double x) { return std::sin(x); });
    CHECK(std::abs(sup_norm(s) - 1.0) <= 1e-6);
    CHECK(sup_distance(s, s) == 0.0);
    CHECK_THROWS_AS(sup_distance(s, SampledFunction::constant(iv, 4096, 0.0)), ShapeError);
}

TEST_CASE("piecewise-linear reads are exact on nodes and monotone for monotone data") {
    const Interval iv(0.0, 2.0);
    const SampledFunction f = SampledFunction::sample(iv, 33, [](double x) { return x * x * x; });
    for (std::size_t j = 0; j < f.size(); ++j) CHECK(f(f.node(j)) == f[j]);
    double prev = f(0.0);
    for (int k = 1; k <= 1000; ++k) {
        const double v = f(2.0 * k / 1000.0);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK_THROWS_AS(f(2.5), DomainError);
}

TEST_CASE("property: sup_distance obeys the triangle inequality") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n(0.0, 1.0);
    const Interval iv(0.0, 1.0);
    auto random_fn = [&] {
        std::vector<double> v(257);
        for (double& x : v) x = n(rng);
        return SampledFunction(iv, v);
    };
    for (int trial = 0; trial < 50; ++trial) {
        const SampledFunction f = random_fn(), g = random_fn(), h = random_fn();
        CHECK(sup_distance(f, h) <= sup_distance(f, g) + sup_distance(g, h) + 1e-15);
    }
}

TEST_CASE("sampled arithmetic and resampling") {
    const Interval iv(0.0, 1.0);
    const SampledFunction f = SampledFunction::sample(iv, 65, [](double x) { return 2.0 * x + 1.0; });
    const SampledFunction g = f.resampled(129);
    CHECK(g.size() == 129);
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(g[j] == doctest::Approx(2.0 * g.node(j) + 1.0).epsilon(1e-14));
    CHECK(sup_norm(f - f) == 0.0);
    CHECK(sup_distance(f * 2.0, f + f) == 0.0);
    CHECK(f.plus_constant(1.0).min() == doctest::Approx(2.0));
    // Linear data has zero interpolation error.
    CHECK(interpolation_error_estimate(f) <= 1e-15);
}
