#pragma once

// Builtin seed functions shared by the CLI, the verification suite and tests.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fractalfn/core.hpp"
#include "fractalfn/spaces.hpp"

namespace fractalfn::seeds {

struct Builtin {
    std::string name;
    Interval default_interval;
    /// 2pi-periodic, so admissible for the trigonometric machinery on [-pi, pi].
    bool periodic;
    std::function<double(double)> fn;
};

/// fig1, sin, abs_sin, exp01, weierstrass_like.
const std::vector<Builtin>& catalogue();
std::optional<Builtin> find(const std::string& name);
std::vector<std::string> names();

/// Numerator 27 sum_{k=0}^{2} sin(x_k3) J_3(x - x_k3)^2 with x_k3 = 2k pi / 3.
double fig1_numerator(double x);
/// Denominator 19 + 8 cos 3x.
double fig1_denominator(double x);
double fig1(double x);

/// sum_{k=0}^{11} 0.6^k cos(2^k x), scaled so that the value at 0 is 1.
double weierstrass_like(double x);

SampledFunction sample_builtin(const Builtin& seed, const Interval& interval, std::size_t count);

}  // namespace fractalfn::seeds
