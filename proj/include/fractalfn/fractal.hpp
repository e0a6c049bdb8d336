#pragma once

// The alpha-fractal engine. f^alpha is the fixed point of the
// Read-Bajraktarevic operator
//
//     (T g)(x) = f(x) + alpha_i (g - b)(L_i^{-1}(x)),   x in I_i,
//
// computed by Picard iteration on a uniform grid with piecewise-linear reads
// of g - b at L_i^{-1}(x).

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "fractalfn/core.hpp"
#include "fractalfn/spaces.hpp"

namespace fractalfn {

inline constexpr int kDefaultMaxIter = 10000;

/// 1e-9 for |alpha|_inf <= 0.5, 1e-6 above.
double default_tolerance(const ScalingVector& scaling);

struct FractalSpec {
    SampledFunction seed;
    Partition partition;
    ScalingVector scaling;
    std::variant<SampledFunction, BaseOperator> base;

    FractalSpec(SampledFunction seed, Partition partition, ScalingVector scaling,
                std::variant<SampledFunction, BaseOperator> base);

    /// b on the seed's grid (L f for an operator base).
    SampledFunction base_function() const;
};

struct FractalResult {
    SampledFunction values;
    int iterations = 0;
    double final_step = 0.0;
    /// final_step |alpha| / (1 - |alpha|): distance bound to the grid fixed point.
    double certified_gap = 0.0;
};

/// Iterates g_{k+1} = T g_k from g_0 = f until the certified gap is at most
/// tol. Throws ConvergenceError after max_iter sweeps.
FractalResult alpha_fractal(const FractalSpec& spec, std::size_t grid_m, double tol,
                            int max_iter = kDefaultMaxIter);

/// max over the result grid of |f^alpha - f - alpha_i (f^alpha - b) o L_i^{-1}|.
double self_referential_residual(const FractalResult& result, const FractalSpec& spec);

/// F^alpha_{Delta,L}(f).
FractalResult fractal_operator_apply(const BaseOperator& op, const SampledFunction& f, const Partition& partition,
                                     const ScalingVector& scaling, std::size_t grid_m, double tol,
                                     int max_iter = kDefaultMaxIter);

struct BoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool holds() const noexcept { return lhs <= rhs + slack; }
};

/// ||f^alpha - f|| against |alpha|/(1-|alpha|) ||f - b||.
BoundCheck check_perturbation_bound(const FractalSpec& spec, const FractalResult& result);

struct OperatorNormReport {
    BoundCheck distance;  ///< ||F(f) - f|| <= k ||Id - L|| ||f||
    BoundCheck norm;      ///< ||F(f)|| <= (1 + k ||Id - L||) ||f||
    double id_minus_norm = 0.0;
    double factor = 0.0;  ///< k = |alpha| / (1 - |alpha|)
    bool all_hold() const noexcept { return distance.holds() && norm.holds(); }
};

OperatorNormReport check_operator_norm_bounds(const BaseOperator& op, const SampledFunction& f,
                                              const Partition& partition, const ScalingVector& scaling,
                                              std::size_t grid_m, double tol);

/// Members f^alpha_{Delta, B_n f} of the multi-valued operator, one per order.
std::vector<FractalResult> bernstein_family(const SampledFunction& f, const Partition& partition,
                                            const ScalingVector& scaling, const std::vector<int>& orders,
                                            std::size_t grid_m, double tol);

struct LipschitzReport {
    BoundCheck distance;          ///< ||f^a - g^a|| <= (1+|a|)/(1-|a|) ||f - g||
    double constant = 0.0;
    double homogeneity_error = 0.0;  ///< ||F(lambda f) - lambda F(f)||
    double homogeneity_slack = 0.0;
    bool all_hold() const noexcept { return distance.holds() && homogeneity_error <= homogeneity_slack; }
};

LipschitzReport check_lipschitz_process(const SampledFunction& f, const SampledFunction& g,
                                        const Partition& partition, const ScalingVector& scaling, int order,
                                        std::size_t grid_m, double tol, double lambda = 2.0);

}  // namespace fractalfn
