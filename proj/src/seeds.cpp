#include "fractalfn/seeds.hpp"

#include <cmath>

namespace fractalfn::seeds {

double fig1_numerator(double x) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double xk = 2.0 * kPi * k / 3.0;
        const double j = jackson_kernel(3, x - xk);
        s += std::sin(xk) * j * j;
    }
    return 27.0 * s;
}

double fig1_denominator(double x) { return 19.0 + 8.0 * std::cos(3.0 * x); }

double fig1(double x) { return fig1_numerator(x) / fig1_denominator(x); }

double weierstrass_like(double x) {
    double s = 0.0;
    double norm = 0.0;
    double a = 1.0;
    double freq = 1.0;
    for (int k = 0; k < 12; ++k) {
        s += a * std::cos(freq * x);
        norm += a;
        a *= 0.6;
        freq *= 2.0;
    }
    return s / norm;
}

const std::vector<Builtin>& catalogue() {
    static const std::vector<Builtin> all{
        {"fig1", Interval(0.0, 1.0), true, fig1},
        {"sin", Interval(-kPi, kPi), true, [](double x) { return std::sin(x); }},
        {"abs_sin", Interval(-kPi, kPi), true, [](double x) { return std::abs(std::sin(x)); }},
        {"exp01", Interval(0.0, 1.0), false, [](double x) { return std::exp(x); }},
        {"weierstrass_like", Interval(-kPi, kPi), true, weierstrass_like},
    };
    return all;
}

std::optional<Builtin> find(const std::string& name) {
    for (const auto& b : catalogue())
        if (b.name == name) return b;
    return std::nullopt;
}

std::vector<std::string> names() {
    std::vector<std::string> out;
    for (const auto& b : catalogue()) out.push_back(b.name);
    return out;
}

SampledFunction sample_builtin(const Builtin& seed, const Interval& interval, std::size_t count) {
    return SampledFunction::sample(interval, count, seed.fn);
}

}  // namespace fractalfn::seeds
