#pragma once

// Classical and fractal approximation errors on discrete grids:
// exchange (Remez) minimax for trigonometric polynomials, differential
// correction for rational trigonometric and algebraic rational functions, and
// the inequality checks built on top of them.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "fractalfn/core.hpp"
#include "fractalfn/fractal.hpp"
#include "fractalfn/spaces.hpp"

namespace fractalfn {

inline constexpr std::size_t kDefaultMinimaxGrid = 4096;

/// p / q in the monomial basis of t = (2x - lo - hi) / (hi - lo) on an interval.
class AlgebraicRational {
public:
    AlgebraicRational(Interval interval, std::vector<double> num, std::vector<double> den);

    const Interval& interval() const noexcept { return interval_; }
    std::span<const double> num() const noexcept { return num_; }
    std::span<const double> den() const noexcept { return den_; }
    double operator()(double x) const;

private:
    Interval interval_;
    std::vector<double> num_;
    std::vector<double> den_;
};

struct MinimaxResult {
    std::variant<TrigPoly, RationalTrig, AlgebraicRational> approximant;
    double error = 0.0;
    int iterations = 0;
    /// Alternating extremal abscissae of f - approximant; empty when the error
    /// is at rounding level.
    std::vector<double> equioscillation_points;
    /// |levelled reference error| (exchange) or grid error (differential
    /// correction) per iteration.
    std::vector<double> level_history;
    bool degraded = false;
    std::string note;

    double operator()(double x) const;
    SampledFunction sampled_on(const SampledFunction& grid_like) const;
};

/// Discrete best approximation from T_m on the periodic grid
/// -pi + 2 pi i / grid_m, i = 0..grid_m-1.
MinimaxResult minimax_trig(const SampledFunction& f, std::size_t m, std::size_t grid_m = kDefaultMinimaxGrid);

/// Discrete best rational trigonometric approximation of type (m, n) by
/// differential correction, started from the T_m minimax solution and q = 1.
MinimaxResult minimax_rational_trig(const SampledFunction& f, std::size_t m, std::size_t n,
                                    std::size_t grid_m = kDefaultMinimaxGrid);

/// Discrete best algebraic rational approximation of type (l, m) on f's interval,
/// using f's grid nodes.
MinimaxResult minimax_rational_algebraic(const SampledFunction& f, std::size_t l, std::size_t m);

/// Nodes of f - approx with |error| >= (1 - 1e-6) max, reduced to an
/// alternating sequence. `periodic` treats the first and last nodes as neighbours.
std::vector<double> extract_alternation(std::span<const double> xs, std::span<const double> err, bool periodic);

// ------------------------------------------------------------ inequality checks

/// 1e-4 + 10 tol + grid interpolation estimate.
double check_slack(double tol, double interpolation_estimate);

struct FractalMinimaxBound {
    double e_mn = 0.0;          ///< discrete proxy for E_mn
    double id_minus_norm = 0.0;
    double bound = 0.0;
    double witness = 0.0;       ///< ||f - F^alpha(r_*)||
    double slack = 0.0;
    MinimaxResult best;
    bool holds() const noexcept { return witness <= bound + slack; }
};

/// Upper bound for the fractal rational trigonometric minimax error and its
/// witness F^alpha_{Delta,L}(r_*) evaluated on f's grid.
FractalMinimaxBound fractal_minimax_bound(const SampledFunction& f, std::size_t m, std::size_t n,
                                          const Partition& partition, const ScalingVector& scaling,
                                          const BaseOperator& op, double tol);

/// Same bound from a known E_mn (no minimax solve).
double fractal_minimax_bound_value(double e_mn, double f_norm, double alpha_sup, double id_minus_norm);

struct ChainRow {
    int order = 0;
    double lhs = 0.0;            ///< ||f - F^alpha_{B_n}(r*)||
    double bernstein_term = 0.0; ///< ||r* - B_n r*||
    double rhs = 0.0;
    bool holds = false;
};

struct CorrectedChainReport {
    double distance = 0.0;  ///< ||f - r*||
    double slack = 0.0;
    std::vector<ChainRow> rows;
    bool trend_ok = false;  ///< each doubling of n shrinks the Bernstein term by >= 5%
    MinimaxResult best;
    bool all_hold() const;
};

CorrectedChainReport corrected_chain_check(const SampledFunction& f, std::size_t l, std::size_t m,
                                           const Partition& partition, const ScalingVector& scaling,
                                           const std::vector<int>& orders, double tol);

/// (eps/2) / (eps/2 + ||Id - L|| ||t||), clipped to 1 - 1e-9.
double weierstrass_scale_threshold(double epsilon, double t_norm, double id_minus_norm);
double weierstrass_scale_threshold(double epsilon, const RationalTrig& t, const BaseOperator& op);

struct NonnegApproximation {
    SampledFunction approximant;
    double gap = 0.0;           ///< ||f - approximant||
    double inner_gap = 0.0;     ///< ||f - t^alpha||
    std::size_t m = 0;
    std::size_t n = 0;
    int bernstein_order = 0;    ///< order used when L is Bernstein, else 0
};

/// Non-negative approximant t^alpha + eps/2 with ||f - t^alpha|| < eps/2.
/// Raises DegreeExhaustedError when no admissible (m, n) reaches eps/2.
NonnegApproximation nonneg_fractal_approx(const SampledFunction& f, double epsilon, const Partition& partition,
                                          const ScalingVector& scaling, const BaseOperator& op, double tol);

struct JacksonReport {
    double actual = 0.0;
    double bound = 0.0;
    double corollary_bound = 0.0;
    double node_error = 0.0;  ///< max |f(x_kn) - Lambda_n f(x_kn)|
};

JacksonReport jackson_error_report(const SampledFunction& f, int n);

/// ||t - F^alpha_{Delta,B_n}(t)|| for each order.
std::vector<double> density_trend(const SampledFunction& t, const Partition& partition, const ScalingVector& scaling,
                                  const std::vector<int>& orders, double tol);

}  // namespace fractalfn
