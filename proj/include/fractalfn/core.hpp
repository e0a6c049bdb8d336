#pragma once

// Foundational domain types: intervals, partitions, scaling vectors, the affine
// contractions L_i and uniformly sampled functions with sup-norm arithmetic.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fractalfn/error.hpp"

namespace fractalfn {

struct Interval {
    double lo;
    double hi;

    Interval(double lo, double hi);

    double length() const noexcept { return hi - lo; }
    bool contains(double x) const noexcept { return x >= lo && x <= hi; }
    bool operator==(const Interval&) const = default;
};

/// Strictly increasing nodes x_0 < ... < x_N with N >= 2.
class Partition {
public:
    explicit Partition(std::vector<double> nodes);

    static Partition uniform(const Interval& interval, std::size_t subintervals);

    std::span<const double> nodes() const noexcept { return nodes_; }
    double node(std::size_t i) const { return nodes_.at(i); }
    std::size_t subinterval_count() const noexcept { return nodes_.size() - 1; }
    Interval interval() const { return {nodes_.front(), nodes_.back()}; }

    /// Zero-based index i with x in [x_i, x_{i+1}); the last subinterval is
    /// closed on the right.
    std::size_t locate(double x) const;

private:
    std::vector<double> nodes_;
};

/// Per-subinterval scaling factors, each strictly inside (-1, 1).
class ScalingVector {
public:
    explicit ScalingVector(std::vector<double> alphas);

    static ScalingVector uniform(std::size_t count, double value);

    std::span<const double> values() const noexcept { return alphas_; }
    double operator[](std::size_t i) const { return alphas_.at(i); }
    std::size_t size() const noexcept { return alphas_.size(); }

    /// |alpha|_inf
    double sup_abs() const noexcept;
    double sum_abs() const noexcept;
    bool is_zero() const noexcept { return sup_abs() == 0.0; }

private:
    std::vector<double> alphas_;
};

/// The maps L_i(x) = a_i x + c_i sending I = [x_0, x_N] onto I_i = [x_{i-1}, x_i].
class AffineMapFamily {
public:
    explicit AffineMapFamily(const Partition& partition);

    std::size_t size() const noexcept { return slopes_.size(); }
    std::span<const double> slopes() const noexcept { return slopes_; }
    std::span<const double> offsets() const noexcept { return offsets_; }

    double forward(std::size_t i, double x) const;
    /// L_i^{-1}, clamped to I so that rounding never leaves the domain.
    double inverse(std::size_t i, double x) const;

private:
    Interval domain_;
    std::vector<double> left_;
    std::vector<double> slopes_;
    std::vector<double> offsets_;
};

AffineMapFamily build_affine_maps(const Partition& partition);
std::size_t locate_subinterval(const Partition& partition, double x);

/// Values of a continuous function on the uniform grid
/// lo + j (hi - lo) / (M - 1), j = 0..M-1; read between nodes by linear
/// interpolation.
class SampledFunction {
public:
    SampledFunction(Interval interval, std::vector<double> values);

    static SampledFunction sample(const Interval& interval, std::size_t count,
                                  const std::function<double(double)>& fn);
    static SampledFunction constant(const Interval& interval, std::size_t count, double value);

    const Interval& interval() const noexcept { return interval_; }
    std::size_t size() const noexcept { return values_.size(); }
    double step() const noexcept { return interval_.length() / static_cast<double>(values_.size() - 1); }
    double node(std::size_t j) const;
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t j) const { return values_[j]; }

    /// Piecewise-linear read; exact on grid nodes. Points outside the interval
    /// by more than a rounding margin raise DomainError.
    double operator()(double x) const;

    SampledFunction resampled(std::size_t count) const;
    bool same_grid(const SampledFunction& other) const noexcept;

    double min() const;
    double max() const;

    SampledFunction operator+(const SampledFunction& other) const;
    SampledFunction operator-(const SampledFunction& other) const;
    SampledFunction operator*(double factor) const;
    SampledFunction plus_constant(double c) const;

private:
    Interval interval_;
    std::vector<double> values_;
};

inline SampledFunction operator*(double factor, const SampledFunction& f) { return f * factor; }

double sup_norm(const SampledFunction& f);
/// Requires identical grids (ShapeError otherwise).
double sup_distance(const SampledFunction& f, const SampledFunction& g);

/// Rough piecewise-linear read error on this grid: max |second difference| / 8.
double interpolation_error_estimate(const SampledFunction& f);

}  // namespace fractalfn
