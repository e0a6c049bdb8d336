#pragma once

// Box dimension of alpha-fractal graphs: the Moran-type root of
// sum |alpha_i| a_i^{D-1} = 1, an empirical column box-counting estimator and
// the dimension-preserving Bernstein sequence.

#include <cstddef>
#include <optional>
#include <vector>

#include "fractalfn/core.hpp"

namespace fractalfn {

struct DimensionSolution {
    double value = 1.0;
    /// h(2) > 0: the root lies beyond 2 and the value is clipped to 2.
    bool saturated = false;
};

/// 1 when sum |alpha_i| <= 1, else the root of sum |alpha_i| a_i^{D-1} = 1 in (1, 2].
DimensionSolution solve_box_dimension(const ScalingVector& scaling, const AffineMapFamily& maps);

/// 1 + log(sum |alpha_i|) / log N for a uniform partition with N pieces.
double uniform_box_dimension(double sum_abs_alpha, std::size_t pieces);

struct BoxCountEstimate {
    double dimension = 0.0;
    double r2 = 0.0;
    std::vector<double> scales;
    std::vector<double> counts;
};

/// Least-squares slope of log N(s) against log(1/s) over n_scales geometric
/// box sizes in [min_scale, max_scale], graph normalized to the unit square.
/// Each column of width s contributes ceil(oscillation / s) + 1 boxes.
BoxCountEstimate box_count_estimate(const SampledFunction& graph, double min_scale, double max_scale,
                                    std::size_t n_scales);

inline constexpr std::size_t kMinBoxCountSamples = (std::size_t{1} << 14) + 1;

struct DimensionReport {
    double theoretical_D = 1.0;
    double sum_abs_alpha = 0.0;
    bool saturated = false;
    std::optional<double> estimator_D;
    std::optional<double> regression_r2;
    std::vector<double> scales_used;
};

DimensionReport dimension_report(const ScalingVector& scaling, const Partition& partition);

/// Max deviation of {(x_i, f(x_i))} from the chord through the end points is
/// at most 1e-9 ||f||.
bool data_collinear(const SampledFunction& f, const Partition& partition);

struct PreservingMember {
    int order = 0;
    double distance = 0.0;      ///< ||f - (p_n)^alpha||
    double chain_bound = 0.0;   ///< ||f - p_n|| + k ||p_n - B_n p_n||
    double theoretical_D = 1.0;
    bool collinear = false;
    /// sum |alpha| > 1 and the data of p_n are not collinear (p_n is a polynomial, hence Lipschitz).
    bool hypotheses_certified = false;
    std::optional<double> estimator_D;
    SampledFunction values;
};

struct PreservingSequenceReport {
    std::vector<PreservingMember> members;
    double slack = 0.0;
    bool dimension_constant() const;
    bool distance_trend_ok() const;   ///< nonincreasing up to slack
    bool chain_holds() const;
};

struct BoxCountScales {
    double min_scale;
    double max_scale;
    std::size_t n_scales;
};

/// Members (p_n)^alpha_{Delta, B_n} with p_n = B_n f for each order.
PreservingSequenceReport dimension_preserving_sequence(const SampledFunction& f, const Partition& partition,
                                                       const ScalingVector& scaling, const std::vector<int>& orders,
                                                       double tol, std::optional<BoxCountScales> estimate = {});

}  // namespace fractalfn
