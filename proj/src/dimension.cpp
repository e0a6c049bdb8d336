#include "fractalfn/dimension.hpp"

#include <algorithm>
#include <cmath>

#include "fractalfn/fractal.hpp"
#include "fractalfn/parallel.hpp"
#include "fractalfn/spaces.hpp"

namespace fractalfn {

namespace {

double moran(const ScalingVector& scaling, std::span<const double> slopes, double d) {
    double s = 0.0;
    for (std::size_t i = 0; i < scaling.size(); ++i) s += std::abs(scaling[i]) * std::pow(slopes[i], d - 1.0);
    return s - 1.0;
}

}  // namespace

DimensionSolution solve_box_dimension(const ScalingVector& scaling, const AffineMapFamily& maps) {
    if (scaling.size() != maps.size()) throw ShapeError("solve_box_dimension: scaling and maps differ in length");
    DimensionSolution out;
    if (scaling.sum_abs() <= 1.0) return out;
    const auto slopes = maps.slopes();
    if (moran(scaling, slopes, 2.0) > 0.0) {
        out.value = 2.0;
        out.saturated = true;
        return out;
    }
    double lo = 1.0;
    double hi = 2.0;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (moran(scaling, slopes, mid) > 0.0 ? lo : hi) = mid;
    }
    out.value = std::abs(moran(scaling, slopes, lo)) <= std::abs(moran(scaling, slopes, hi)) ? lo : hi;
    return out;
}

double uniform_box_dimension(double sum_abs_alpha, std::size_t pieces) {
    if (pieces < 2) throw DomainError("uniform_box_dimension: need at least two pieces");
    if (sum_abs_alpha <= 1.0) return 1.0;
    return std::min(2.0, 1.0 + std::log(sum_abs_alpha) / std::log(static_cast<double>(pieces)));
}

BoxCountEstimate box_count_estimate(const SampledFunction& graph, double min_scale, double max_scale,
                                    std::size_t n_scales) {
    if (n_scales < 3) throw DomainError("box_count_estimate: need at least 3 scales");
    if (!(min_scale > 0.0) || !(max_scale > min_scale) || max_scale > 1.0)
        throw DomainError("box_count_estimate: scales must satisfy 0 < min < max <= 1");
    if (graph.size() < kMinBoxCountSamples)
        throw PreconditionError("box_count_estimate: graph needs at least 2^14+1 samples");

    const auto v = graph.values();
    const double lo = graph.min();
    const double span = graph.max() - lo;
    const std::size_t last = v.size() - 1;

    BoxCountEstimate out;
    out.scales.resize(n_scales);
    out.counts.resize(n_scales);
    const double ratio = std::log(min_scale / max_scale) / static_cast<double>(n_scales - 1);
    for (std::size_t k = 0; k < n_scales; ++k) out.scales[k] = max_scale * std::exp(ratio * static_cast<double>(k));

    parallel_for(
        n_scales,
        [&](std::size_t begin, std::size_t end) {
            for (std::size_t k = begin; k < end; ++k) {
                const double s = out.scales[k];
                const auto columns = static_cast<std::size_t>(std::ceil(1.0 / s - 1e-12));
                double count = 0.0;
                for (std::size_t c = 0; c < columns; ++c) {
                    // Samples with normalized abscissa in [c s, (c+1) s], both ends included.
                    const auto j0 = static_cast<std::size_t>(std::floor(static_cast<double>(c) * s * last + 1e-9));
                    const auto j1 = std::min(
                        last, static_cast<std::size_t>(std::ceil(static_cast<double>(c + 1) * s * last - 1e-9)));
                    double mn = v[j0];
                    double mx = v[j0];
                    for (std::size_t j = j0; j <= j1; ++j) {
                        mn = std::min(mn, v[j]);
                        mx = std::max(mx, v[j]);
                    }
                    const double osc = span > 0.0 ? (mx - mn) / span : 0.0;
                    count += std::ceil(osc / s - 1e-12) + 1.0;
                }
                out.counts[k] = count;
            }
        },
        1);

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    const auto n = static_cast<double>(n_scales);
    for (std::size_t k = 0; k < n_scales; ++k) {
        const double x = -std::log(out.scales[k]);
        const double y = std::log(out.counts[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double cov = sxy - sx * sy / n;
    const double varx = sxx - sx * sx / n;
    const double vary = syy - sy * sy / n;
    out.dimension = cov / varx;
    out.r2 = vary > 0.0 ? (cov * cov) / (varx * vary) : 1.0;
    return out;
}

DimensionReport dimension_report(const ScalingVector& scaling, const Partition& partition) {
    const DimensionSolution d = solve_box_dimension(scaling, AffineMapFamily(partition));
    DimensionReport rep;
    rep.theoretical_D = d.value;
    rep.saturated = d.saturated;
    rep.sum_abs_alpha = scaling.sum_abs();
    return rep;
}

bool data_collinear(const SampledFunction& f, const Partition& partition) {
    const auto nodes = partition.nodes();
    const double x0 = nodes.front();
    const double xn = nodes.back();
    const double y0 = f(x0);
    const double yn = f(xn);
    double dev = 0.0;
    for (double x : nodes) dev = std::max(dev, std::abs(f(x) - (y0 + (yn - y0) * (x - x0) / (xn - x0))));
    return dev <= 1e-9 * sup_norm(f);
}

bool PreservingSequenceReport::dimension_constant() const {
    return std::all_of(members.begin(), members.end(),
                       [this](const PreservingMember& m) { return m.theoretical_D == members.front().theoretical_D; });
}

bool PreservingSequenceReport::distance_trend_ok() const {
    for (std::size_t j = 1; j < members.size(); ++j)
        if (members[j].distance > members[j - 1].distance + slack) return false;
    return true;
}

bool PreservingSequenceReport::chain_holds() const {
    return std::all_of(members.begin(), members.end(),
                       [this](const PreservingMember& m) { return m.distance <= m.chain_bound + slack; });
}

PreservingSequenceReport dimension_preserving_sequence(const SampledFunction& f, const Partition& partition,
                                                       const ScalingVector& scaling, const std::vector<int>& orders,
                                                       double tol, std::optional<BoxCountScales> estimate) {
    const AffineMapFamily maps(partition);
    const double s = scaling.sup_abs();
    const double k = s / (1.0 - s);
    PreservingSequenceReport rep;
    rep.slack = 1e-4 + 10.0 * tol;
    for (int order : orders) {
        const SampledFunction pn = bernstein_apply(f, order);
        const FractalResult fr =
            fractal_operator_apply(BaseOperator::bernstein(order), pn, partition, scaling, f.size(), tol);
        PreservingMember m{order,
                           sup_distance(f, fr.values),
                           sup_distance(f, pn) + k * sup_distance(pn, bernstein_apply(pn, order)),
                           solve_box_dimension(scaling, maps).value,
                           data_collinear(pn, partition),
                           false,
                           std::nullopt,
                           fr.values};
        m.hypotheses_certified = scaling.sum_abs() > 1.0 && !m.collinear;
        if (estimate)
            m.estimator_D = box_count_estimate(fr.values, estimate->min_scale, estimate->max_scale, estimate->n_scales)
                                .dimension;
        rep.members.push_back(std::move(m));
    }
    return rep;
}

}  // namespace fractalfn
