#pragma once

// Concrete function families: trigonometric polynomials, rational
// trigonometric quotients, the Bernstein operator, the Jackson kernel, the
// Jackson-Varma interpolating operator and the catalogue of base operators L.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fractalfn/core.hpp"

namespace fractalfn {

inline constexpr double kPi = 3.14159265358979323846;

/// t(x) = a_0 + sum_{k=1}^{m} (a_k cos kx + b_k sin kx)
class TrigPoly {
public:
    TrigPoly() = default;
    TrigPoly(double constant, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

    static TrigPoly constant(double c) { return TrigPoly(c, {}, {}); }

    std::size_t degree() const noexcept { return cos_.size(); }
    double constant_term() const noexcept { return a0_; }
    std::span<const double> cos_coeffs() const noexcept { return cos_; }
    std::span<const double> sin_coeffs() const noexcept { return sin_; }
    double coefficient_l1() const noexcept;

    double operator()(double x) const;

private:
    double a0_ = 0.0;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

double eval_trig(const TrigPoly& t, double x);
SampledFunction sample_trig(const TrigPoly& t, const Interval& interval, std::size_t count);

/// p / q with q > 0 on the period. Positivity is checked by sampling q at
/// 64 (deg q + 1) points of [-pi, pi).
class RationalTrig {
public:
    RationalTrig(TrigPoly num, TrigPoly den);

    const TrigPoly& num() const noexcept { return num_; }
    const TrigPoly& den() const noexcept { return den_; }
    double den_min_sampled() const noexcept { return den_min_; }

    double operator()(double x) const { return num_(x) / den_(x); }

private:
    TrigPoly num_;
    TrigPoly den_;
    double den_min_;
};

double eval_rational(const RationalTrig& r, double x);

/// J_n(x) = (sin(nx/2) / (n sin(x/2)))^2, equal to 1 where |sin(x/2)| < 1e-9.
double jackson_kernel(int n, double x);

/// Denominator of the Jackson-Varma operator, 1 - ((n^2-1)/(3n^2))(1 - cos nx).
double varma_denominator(int n, double x);

/// Jackson-Varma operator of order n >= 2 applied to a 2pi-periodic f on
/// [-pi, pi], sampled on f's grid.
SampledFunction varma_apply(const SampledFunction& f, int n);
/// Lambda_n(f, x) at a single point.
double varma_at(const SampledFunction& f, int n, double x);
/// Interpolation nodes 2k pi / n, k = 0..n-1, wrapped into [-pi, pi).
std::vector<double> varma_nodes_of(int n);

/// Largest Bernstein order accepted; binomials are formed in floating point.
inline constexpr int kMaxBernsteinOrder = 60;

double binomial(int n, int k);

/// Degree-n Bernstein polynomial of f on f's interval, sampled on f's grid.
SampledFunction bernstein_apply(const SampledFunction& f, int n);

/// Grid proxy for omega_f(delta): max |f(x_j) - f(x_k)| over grid pairs with
/// |x_j - x_k| <= delta.
double modulus_of_continuity(const SampledFunction& f, double delta);

/// Bounded linear base operator L (or an explicit base function b) with its
/// norm data.
class BaseOperator {
public:
    struct Bernstein {
        int order;
    };
    struct MultiplyByProfile {
        SampledFunction profile;
    };
    struct ComposeWith {
        SampledFunction map;
    };
    struct Explicit {
        SampledFunction base;
    };
    using Kind = std::variant<Bernstein, MultiplyByProfile, ComposeWith, Explicit>;

    static BaseOperator bernstein(int order);
    /// Requires nu(x_0) = nu(x_N) = 1.
    static BaseOperator multiply_by_profile(SampledFunction profile);
    /// Requires phi increasing with phi(x_0) = x_0 and phi(x_N) = x_N.
    static BaseOperator compose_with(SampledFunction map);
    static BaseOperator explicit_base(SampledFunction base);

    /// nu(x) = 1 + s(s - 1) with s the affine image of x in [0, 1].
    static BaseOperator quadratic_dip_profile(const Interval& interval, std::size_t samples = 65537);
    /// phi(x) = x_0 + (x_N - x_0) s^3.
    static BaseOperator cubic_map(const Interval& interval, std::size_t samples = 65537);

    const Kind& kind() const noexcept { return kind_; }
    std::string name() const;
    bool is_linear() const noexcept { return !std::holds_alternative<Explicit>(kind_); }

    SampledFunction apply(const SampledFunction& f) const;

    /// ||L||: exact for multiplication operators, 1 for Bernstein and composition.
    std::optional<double> norm() const;
    /// Exact sup|1 - nu| for multiplication; the bound 2 for Bernstein and composition.
    std::optional<double> id_minus_norm_bound() const;
    /// Whether L(1) = 1.
    bool fixes_constants() const;

private:
    explicit BaseOperator(Kind kind) : kind_(std::move(kind)) {}
    Kind kind_;
};

SampledFunction base_operator_apply(const BaseOperator& op, const SampledFunction& f);

}  // namespace fractalfn
