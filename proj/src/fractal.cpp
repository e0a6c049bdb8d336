#include "fractalfn/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fractalfn/parallel.hpp"

namespace fractalfn {

namespace {

constexpr double kBaseEndpointTol = 1e-8;

// Precomputed read of g at L_i^{-1}(x_j): (1 - w) g[k] + w g[k + 1].
struct SourceRead {
    std::size_t k;
    double w;
    double alpha;
};

std::vector<SourceRead> build_reads(const Partition& partition, const ScalingVector& scaling,
                                    const Interval& grid_interval, std::size_t grid_m) {
    const AffineMapFamily maps(partition);
    const auto probe = SampledFunction::constant(grid_interval, grid_m, 0.0);
    const double h = probe.step();
    const auto last = static_cast<double>(grid_m - 1);
    std::vector<SourceRead> reads(grid_m);
    for (std::size_t j = 0; j < grid_m; ++j) {
        const double x = probe.node(j);
        const std::size_t i = partition.locate(x);
        const double y = maps.inverse(i, x);
        double t = std::clamp((y - grid_interval.lo) / h, 0.0, last);
        const double nearest = std::round(t);
        if (std::abs(t - nearest) < 1e-9) t = nearest;
        auto k = static_cast<std::size_t>(std::floor(t));
        double w = t - static_cast<double>(k);
        if (k + 1 >= grid_m) {
            k = grid_m - 2;
            w = 1.0;
        }
        reads[j] = {k, w, scaling[i]};
    }
    return reads;
}

double scale_of(const SampledFunction& f) { return std::max(1.0, sup_norm(f)); }

void check_base_endpoints(const SampledFunction& f, const SampledFunction& b) {
    const double tol = kBaseEndpointTol * scale_of(f);
    const std::size_t last = f.size() - 1;
    if (std::abs(b[0] - f[0]) > tol || std::abs(b[last] - f[last]) > tol) {
        std::ostringstream os;
        os.precision(17);
        os << "base function must match the seed at the endpoints: b(x_0)-f(x_0)=" << b[0] - f[0]
           << ", b(x_N)-f(x_N)=" << b[last] - f[last];
        throw InvariantError(os.str());
    }
}

SampledFunction base_on_grid(const std::variant<SampledFunction, BaseOperator>& base, const SampledFunction& f) {
    if (const auto* explicit_b = std::get_if<SampledFunction>(&base)) {
        if (!(explicit_b->interval() == f.interval())) throw ShapeError("base and seed live on different intervals");
        return explicit_b->resampled(f.size());
    }
    return std::get<BaseOperator>(base).apply(f);
}

double contraction_factor(double s) { return s / (1.0 - s); }

}  // namespace

double default_tolerance(const ScalingVector& scaling) { return scaling.sup_abs() <= 0.5 ? 1e-9 : 1e-6; }

FractalSpec::FractalSpec(SampledFunction seed_, Partition partition_, ScalingVector scaling_,
                         std::variant<SampledFunction, BaseOperator> base_)
    : seed(std::move(seed_)), partition(std::move(partition_)), scaling(std::move(scaling_)), base(std::move(base_)) {
    const Interval p = partition.interval();
    const Interval s = seed.interval();
    const double tol = 1e-12 * std::max(1.0, std::max(std::abs(p.lo), std::abs(p.hi)));
    if (std::abs(p.lo - s.lo) > tol || std::abs(p.hi - s.hi) > tol)
        throw InvariantError("partition and seed must share the interval [x_0, x_N]");
    if (scaling.size() != partition.subinterval_count())
        throw InvariantError("scaling vector length must equal the number of subintervals");
    check_base_endpoints(seed, base_function());
}

SampledFunction FractalSpec::base_function() const { return base_on_grid(base, seed); }

FractalResult alpha_fractal(const FractalSpec& spec, std::size_t grid_m, double tol, int max_iter) {
    const std::size_t n = spec.partition.subinterval_count();
    if (grid_m < 2 * n + 1) throw DomainError("alpha_fractal: grid must have at least 2N+1 samples");
    if (!(tol > 0.0)) throw DomainError("alpha_fractal: tol must be positive");
    if (max_iter < 1) throw DomainError("alpha_fractal: max_iter must be positive");

    const SampledFunction f = spec.seed.resampled(grid_m);
    const SampledFunction b = base_on_grid(spec.base, f);
    check_base_endpoints(f, b);

    const auto reads = build_reads(spec.partition, spec.scaling, f.interval(), grid_m);
    const double s = spec.scaling.sup_abs();
    const double step_target = s == 0.0 ? 0.0 : tol / contraction_factor(s);

    std::vector<double> g(f.values().begin(), f.values().end());
    std::vector<double> next(grid_m);
    std::vector<double> diff(grid_m);
    const auto fv = f.values();
    const auto bv = b.values();

    double step = 0.0;
    for (int iter = 1; iter <= max_iter; ++iter) {
        for (std::size_t j = 0; j < grid_m; ++j) diff[j] = g[j] - bv[j];
        parallel_for(grid_m, [&](std::size_t begin, std::size_t end) {
            for (std::size_t j = begin; j < end; ++j) {
                const SourceRead& r = reads[j];
                const double read = r.w == 0.0 ? diff[r.k] : (1.0 - r.w) * diff[r.k] + r.w * diff[r.k + 1];
                next[j] = fv[j] + r.alpha * read;
            }
        });
        step = 0.0;
        for (std::size_t j = 0; j < grid_m; ++j) step = std::max(step, std::abs(next[j] - g[j]));
        g.swap(next);
        if (s == 0.0 || step <= step_target) {
            FractalResult out{SampledFunction(f.interval(), std::move(g)), iter, step, 0.0};
            out.certified_gap = s == 0.0 ? 0.0 : step * contraction_factor(s);
            return out;
        }
    }
    std::ostringstream os;
    os.precision(6);
    os << "alpha_fractal: no convergence after " << max_iter << " iterations (final step " << step << ")";
    throw ConvergenceError(os.str(), step, max_iter);
}

double self_referential_residual(const FractalResult& result, const FractalSpec& spec) {
    const std::size_t m = result.values.size();
    const SampledFunction f = spec.seed.resampled(m);
    const SampledFunction b = base_on_grid(spec.base, f);
    const auto reads = build_reads(spec.partition, spec.scaling, f.interval(), m);
    const auto g = result.values.values();
    double worst = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const SourceRead& r = reads[j];
        const double d0 = g[r.k] - b[r.k];
        const double read = r.w == 0.0 ? d0 : (1.0 - r.w) * d0 + r.w * (g[r.k + 1] - b[r.k + 1]);
        worst = std::max(worst, std::abs(g[j] - f[j] - r.alpha * read));
    }
    return worst;
}

FractalResult fractal_operator_apply(const BaseOperator& op, const SampledFunction& f, const Partition& partition,
                                     const ScalingVector& scaling, std::size_t grid_m, double tol, int max_iter) {
    const FractalSpec spec(f.resampled(grid_m), partition, scaling, op);
    return alpha_fractal(spec, grid_m, tol, max_iter);
}

BoundCheck check_perturbation_bound(const FractalSpec& spec, const FractalResult& result) {
    const std::size_t m = result.values.size();
    const SampledFunction f = spec.seed.resampled(m);
    const SampledFunction b = base_on_grid(spec.base, f);
    BoundCheck c;
    c.lhs = sup_distance(result.values, f);
    c.rhs = contraction_factor(spec.scaling.sup_abs()) * sup_distance(f, b);
    c.slack = result.certified_gap + 1e-12 * scale_of(f);
    return c;
}

OperatorNormReport check_operator_norm_bounds(const BaseOperator& op, const SampledFunction& f,
                                              const Partition& partition, const ScalingVector& scaling,
                                              std::size_t grid_m, double tol) {
    const auto bound = op.id_minus_norm_bound();
    if (!bound) throw PreconditionError("operator norm bounds need a linear base operator");
    const SampledFunction fg = f.resampled(grid_m);
    const FractalResult r = fractal_operator_apply(op, fg, partition, scaling, grid_m, tol);

    OperatorNormReport rep;
    rep.id_minus_norm = *bound;
    rep.factor = contraction_factor(scaling.sup_abs());
    const double fn = sup_norm(fg);
    const double slack = r.certified_gap + 1e-12 * scale_of(fg);
    rep.distance = {sup_distance(r.values, fg), rep.factor * rep.id_minus_norm * fn, slack};
    rep.norm = {sup_norm(r.values), (1.0 + rep.factor * rep.id_minus_norm) * fn, slack};
    return rep;
}

std::vector<FractalResult> bernstein_family(const SampledFunction& f, const Partition& partition,
                                            const ScalingVector& scaling, const std::vector<int>& orders,
                                            std::size_t grid_m, double tol) {
    std::vector<FractalResult> members;
    members.reserve(orders.size());
    for (int n : orders)
        members.push_back(fractal_operator_apply(BaseOperator::bernstein(n), f, partition, scaling, grid_m, tol));
    return members;
}

LipschitzReport check_lipschitz_process(const SampledFunction& f, const SampledFunction& g,
                                        const Partition& partition, const ScalingVector& scaling, int order,
                                        std::size_t grid_m, double tol, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("positive homogeneity needs lambda > 0");
    const auto op = BaseOperator::bernstein(order);
    const SampledFunction fg = f.resampled(grid_m);
    const SampledFunction gg = g.resampled(grid_m);
    const FractalResult fa = fractal_operator_apply(op, fg, partition, scaling, grid_m, tol);
    const FractalResult ga = fractal_operator_apply(op, gg, partition, scaling, grid_m, tol);
    const FractalResult scaled = fractal_operator_apply(op, fg * lambda, partition, scaling, grid_m, tol);

    const double s = scaling.sup_abs();
    LipschitzReport rep;
    rep.constant = (1.0 + s) / (1.0 - s);
    rep.distance = {sup_distance(fa.values, ga.values), rep.constant * sup_distance(fg, gg),
                    fa.certified_gap + ga.certified_gap + 1e-12 * std::max(scale_of(fg), scale_of(gg))};
    rep.homogeneity_error = sup_distance(scaled.values, fa.values * lambda);
    rep.homogeneity_slack = 2.0 * tol;
    return rep;
}

}  // namespace fractalfn
