#include "fractalfn/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "fractalfn/parallel.hpp"

namespace fractalfn {

namespace {

constexpr double kEndpointTol = 1e-10;

bool is_symmetric_period(const Interval& iv) {
    return std::abs(iv.lo + kPi) <= 1e-12 && std::abs(iv.hi - kPi) <= 1e-12;
}

void check_endpoints(const SampledFunction& f, const SampledFunction& lf, const std::string& who) {
    const double scale = std::max(1.0, sup_norm(f));
    const std::size_t last = f.size() - 1;
    if (std::abs(lf[0] - f[0]) > kEndpointTol * scale || std::abs(lf[last] - f[last]) > kEndpointTol * scale)
        throw InvariantError(who + ": base does not match the seed at the interval endpoints");
}

}  // namespace

// ---------------------------------------------------------------- TrigPoly

TrigPoly::TrigPoly(double constant, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : a0_(constant), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    const std::size_t m = std::max(cos_.size(), sin_.size());
    cos_.resize(m, 0.0);
    sin_.resize(m, 0.0);
}

double TrigPoly::coefficient_l1() const noexcept {
    double s = std::abs(a0_);
    for (std::size_t k = 0; k < cos_.size(); ++k) s += std::abs(cos_[k]) + std::abs(sin_[k]);
    return s;
}

double TrigPoly::operator()(double x) const {
    double s = a0_;
    for (std::size_t k = 0; k < cos_.size(); ++k) {
        const double kx = static_cast<double>(k + 1) * x;
        s += cos_[k] * std::cos(kx) + sin_[k] * std::sin(kx);
    }
    return s;
}

double eval_trig(const TrigPoly& t, double x) { return t(x); }

SampledFunction sample_trig(const TrigPoly& t, const Interval& interval, std::size_t count) {
    return SampledFunction::sample(interval, count, [&t](double x) { return t(x); });
}

// ------------------------------------------------------------ RationalTrig

RationalTrig::RationalTrig(TrigPoly num, TrigPoly den) : num_(std::move(num)), den_(std::move(den)) {
    const std::size_t probes = 64 * (den_.degree() + 1);
    den_min_ = den_(-kPi);
    for (std::size_t j = 1; j < probes; ++j)
        den_min_ = std::min(den_min_, den_(-kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(probes)));
    if (!(den_min_ > 0.0)) throw InvariantError("rational trigonometric denominator must be positive");
}

double eval_rational(const RationalTrig& r, double x) { return r(x); }

// ------------------------------------------------------- Jackson and Varma

double jackson_kernel(int n, double x) {
    if (n < 1) throw DomainError("jackson_kernel: n must be >= 1");
    const double s = std::sin(0.5 * x);
    if (std::abs(s) < 1e-9) return 1.0;
    const double r = std::sin(0.5 * static_cast<double>(n) * x) / (static_cast<double>(n) * s);
    return r * r;
}

double varma_denominator(int n, double x) {
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    return 1.0 - ((nn - 1.0) / (3.0 * nn)) * (1.0 - std::cos(static_cast<double>(n) * x));
}

namespace {

struct VarmaNodes {
    std::vector<double> x;
    std::vector<double> value;
};

VarmaNodes varma_nodes(const SampledFunction& f, int n) {
    if (n < 2) throw DomainError("varma_apply: n must be >= 2");
    if (!is_symmetric_period(f.interval())) throw PreconditionError("varma_apply: f must live on [-pi, pi]");
    if (std::abs(f[0] - f[f.size() - 1]) > 1e-8) throw PreconditionError("varma_apply: f must be 2pi-periodic");
    VarmaNodes nodes;
    for (int k = 0; k < n; ++k) {
        double x = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        if (x >= kPi) x -= 2.0 * kPi;
        nodes.x.push_back(x);
        nodes.value.push_back(f(x));
    }
    return nodes;
}

double varma_sum(const VarmaNodes& nodes, int n, double x) {
    double num = 0.0;
    for (std::size_t k = 0; k < nodes.x.size(); ++k) {
        const double jk = jackson_kernel(n, x - nodes.x[k]);
        num += nodes.value[k] * jk * jk;
    }
    return num / varma_denominator(n, x);
}

}  // namespace

std::vector<double> varma_nodes_of(int n) {
    std::vector<double> xs;
    for (int k = 0; k < n; ++k) {
        double x = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        if (x >= kPi) x -= 2.0 * kPi;
        xs.push_back(x);
    }
    return xs;
}

double varma_at(const SampledFunction& f, int n, double x) { return varma_sum(varma_nodes(f, n), n, x); }

SampledFunction varma_apply(const SampledFunction& f, int n) {
    const VarmaNodes nodes = varma_nodes(f, n);
    std::vector<double> out(f.size());
    parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) out[j] = varma_sum(nodes, n, f.node(j));
    });
    return SampledFunction(f.interval(), std::move(out));
}

// --------------------------------------------------------------- Bernstein

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    return std::round(c);
}

SampledFunction bernstein_apply(const SampledFunction& f, int n) {
    if (n < 1) throw DomainError("bernstein_apply: n must be >= 1");
    if (n > kMaxBernsteinOrder) throw DomainError("bernstein_apply: order above 60 is not supported");
    const Interval iv = f.interval();
    const auto order = static_cast<std::size_t>(n);

    std::vector<double> weights(order + 1);
    for (std::size_t k = 0; k <= order; ++k) {
        const double x = k == order ? iv.hi : iv.lo + iv.length() * static_cast<double>(k) / static_cast<double>(n);
        weights[k] = f(x) * binomial(n, static_cast<int>(k));
    }

    std::vector<double> out(f.size());
    parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> tp(order + 1), up(order + 1);
        for (std::size_t j = begin; j < end; ++j) {
            const double t = (f.node(j) - iv.lo) / iv.length();
            const double u = 1.0 - t;
            tp[0] = up[0] = 1.0;
            for (std::size_t k = 1; k <= order; ++k) {
                tp[k] = tp[k - 1] * t;
                up[k] = up[k - 1] * u;
            }
            double s = 0.0;
            for (std::size_t k = 0; k <= order; ++k) s += weights[k] * tp[k] * up[order - k];
            out[j] = s;
        }
    });
    return SampledFunction(iv, std::move(out));
}

// ----------------------------------------------------- modulus of continuity

double modulus_of_continuity(const SampledFunction& f, double delta) {
    if (!(delta > 0.0)) throw DomainError("modulus_of_continuity: delta must be positive");
    const auto v = f.values();
    const std::size_t last = v.size() - 1;
    const double lag_real = delta / f.step() + 1e-9;
    if (lag_real >= static_cast<double>(last)) return f.max() - f.min();
    const auto lag = static_cast<std::size_t>(std::floor(lag_real));
    if (lag == 0) return 0.0;

    // Sliding window of lag+1 consecutive samples; track its max and min.
    std::deque<std::size_t> hi, lo;
    double best = 0.0;
    for (std::size_t j = 0; j <= last; ++j) {
        while (!hi.empty() && v[hi.back()] <= v[j]) hi.pop_back();
        while (!lo.empty() && v[lo.back()] >= v[j]) lo.pop_back();
        hi.push_back(j);
        lo.push_back(j);
        if (hi.front() + lag < j) hi.pop_front();
        if (lo.front() + lag < j) lo.pop_front();
        best = std::max(best, v[hi.front()] - v[lo.front()]);
    }
    return best;
}

// ------------------------------------------------------------ BaseOperator

BaseOperator BaseOperator::bernstein(int order) {
    if (order < 1 || order > kMaxBernsteinOrder) throw DomainError("Bernstein order must be in [1, 60]");
    return BaseOperator(Bernstein{order});
}

BaseOperator BaseOperator::multiply_by_profile(SampledFunction profile) {
    const std::size_t last = profile.size() - 1;
    if (std::abs(profile[0] - 1.0) > kEndpointTol || std::abs(profile[last] - 1.0) > kEndpointTol)
        throw InvariantError("multiplication profile must equal 1 at both endpoints");
    return BaseOperator(MultiplyByProfile{std::move(profile)});
}

BaseOperator BaseOperator::compose_with(SampledFunction map) {
    const Interval iv = map.interval();
    const std::size_t last = map.size() - 1;
    const double tol = kEndpointTol * std::max(1.0, std::max(std::abs(iv.lo), std::abs(iv.hi)));
    if (std::abs(map[0] - iv.lo) > tol || std::abs(map[last] - iv.hi) > tol)
        throw InvariantError("composition map must fix both endpoints");
    for (std::size_t j = 1; j <= last; ++j)
        if (!(map[j] > map[j - 1])) throw InvariantError("composition map must be strictly increasing");
    return BaseOperator(ComposeWith{std::move(map)});
}

BaseOperator BaseOperator::explicit_base(SampledFunction base) { return BaseOperator(Explicit{std::move(base)}); }

BaseOperator BaseOperator::quadratic_dip_profile(const Interval& interval, std::size_t samples) {
    auto nu = SampledFunction::sample(interval, samples, [&interval](double x) {
        const double s = (x - interval.lo) / interval.length();
        return 1.0 + s * (s - 1.0);
    });
    return multiply_by_profile(std::move(nu));
}

BaseOperator BaseOperator::cubic_map(const Interval& interval, std::size_t samples) {
    auto phi = SampledFunction::sample(interval, samples, [&interval](double x) {
        const double s = (x - interval.lo) / interval.length();
        return interval.lo + interval.length() * s * s * s;
    });
    return compose_with(std::move(phi));
}

std::string BaseOperator::name() const {
    return std::visit(
        [](const auto& k) -> std::string {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Bernstein>) return "bernstein(" + std::to_string(k.order) + ")";
            else if constexpr (std::is_same_v<K, MultiplyByProfile>) return "multiply_by_profile";
            else if constexpr (std::is_same_v<K, ComposeWith>) return "compose_with";
            else return "explicit";
        },
        kind_);
}

SampledFunction BaseOperator::apply(const SampledFunction& f) const {
    return std::visit(
        [&f](const auto& k) -> SampledFunction {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Bernstein>) {
                return bernstein_apply(f, k.order);
            } else if constexpr (std::is_same_v<K, MultiplyByProfile>) {
                if (!(k.profile.interval() == f.interval())) throw ShapeError("profile interval differs from f");
                std::vector<double> out(f.size());
                for (std::size_t j = 0; j < out.size(); ++j) out[j] = f[j] * k.profile(f.node(j));
                return SampledFunction(f.interval(), std::move(out));
            } else if constexpr (std::is_same_v<K, ComposeWith>) {
                if (!(k.map.interval() == f.interval())) throw ShapeError("composition map interval differs from f");
                std::vector<double> out(f.size());
                for (std::size_t j = 0; j < out.size(); ++j) out[j] = f(k.map(f.node(j)));
                return SampledFunction(f.interval(), std::move(out));
            } else {
                if (!(k.base.interval() == f.interval())) throw ShapeError("explicit base interval differs from f");
                return k.base.resampled(f.size());
            }
        },
        kind_);
}

std::optional<double> BaseOperator::norm() const {
    if (const auto* p = std::get_if<MultiplyByProfile>(&kind_)) return sup_norm(p->profile);
    if (std::holds_alternative<Explicit>(kind_)) return std::nullopt;
    return 1.0;
}

std::optional<double> BaseOperator::id_minus_norm_bound() const {
    if (const auto* p = std::get_if<MultiplyByProfile>(&kind_)) {
        double m = 0.0;
        for (double v : p->profile.values()) m = std::max(m, std::abs(1.0 - v));
        return m;
    }
    if (std::holds_alternative<Explicit>(kind_)) return std::nullopt;
    return 2.0;
}

bool BaseOperator::fixes_constants() const {
    if (std::holds_alternative<MultiplyByProfile>(kind_)) return *id_minus_norm_bound() == 0.0;
    return !std::holds_alternative<Explicit>(kind_);
}

SampledFunction base_operator_apply(const BaseOperator& op, const SampledFunction& f) {
    auto b = op.apply(f);
    check_endpoints(f, b, "base_operator_apply");
    return b;
}

}  // namespace fractalfn
