#include "fractalfn/approx.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include <Eigen/Dense>

#include "fractalfn/lp.hpp"

namespace fractalfn {

namespace {

constexpr int kExchangeDegradedAfter = 500;
constexpr int kCorrectionMaxIter = 60;
constexpr double kDenominatorFloor = 1e-6;

using RowFn = std::function<void(double, double*)>;

double scale_of(std::span<const double> v) {
    double s = 1.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

// Column order: 1, cos x, sin x, cos 2x, sin 2x, ...
RowFn trig_row(std::size_t m) {
    return [m](double x, double* row) {
        row[0] = 1.0;
        for (std::size_t k = 1; k <= m; ++k) {
            const double kx = static_cast<double>(k) * x;
            row[2 * k - 1] = std::cos(kx);
            row[2 * k] = std::sin(kx);
        }
    };
}

TrigPoly trig_from(const Eigen::VectorXd& c) {
    const auto m = static_cast<std::size_t>((c.size() - 1) / 2);
    std::vector<double> cs(m), sn(m);
    for (std::size_t k = 1; k <= m; ++k) {
        cs[k - 1] = c(static_cast<Eigen::Index>(2 * k - 1));
        sn[k - 1] = c(static_cast<Eigen::Index>(2 * k));
    }
    return TrigPoly(c(0), std::move(cs), std::move(sn));
}

RowFn monomial_row(const Interval& iv, std::size_t degree) {
    return [iv, degree](double x, double* row) {
        const double t = (2.0 * x - iv.lo - iv.hi) / iv.length();
        double p = 1.0;
        for (std::size_t k = 0; k <= degree; ++k) {
            row[k] = p;
            p *= t;
        }
    };
}

Eigen::MatrixXd design(const std::vector<double>& xs, std::size_t cols, const RowFn& row) {
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> a(static_cast<Eigen::Index>(xs.size()),
                                                                              static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < xs.size(); ++i) row(xs[i], a.row(static_cast<Eigen::Index>(i)).data());
    return a;
}

struct PeriodicSamples {
    std::vector<double> x;
    std::vector<double> f;
};

PeriodicSamples periodic_samples(const SampledFunction& f, std::size_t grid_m) {
    const Interval iv = f.interval();
    if (std::abs(iv.lo + kPi) > 1e-12 || std::abs(iv.hi - kPi) > 1e-12)
        throw PreconditionError("trigonometric minimax needs f on [-pi, pi]");
    if (std::abs(f[0] - f[f.size() - 1]) > 1e-8) throw PreconditionError("trigonometric minimax needs a periodic f");
    PeriodicSamples s;
    s.x.resize(grid_m);
    s.f.resize(grid_m);
    for (std::size_t i = 0; i < grid_m; ++i) {
        s.x[i] = -kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(grid_m);
        s.f[i] = f(s.x[i]);
    }
    return s;
}

// --------------------------------------------------------------- exchange

struct ExchangeOutcome {
    Eigen::VectorXd coeffs;
    std::vector<double> err;
    double error = 0.0;
    int iterations = 0;
    std::vector<double> history;
    bool degraded = false;
};

ExchangeOutcome exchange(const std::vector<double>& fv, const Eigen::MatrixXd& phi) {
    const std::size_t grid = fv.size();
    const auto d = static_cast<std::size_t>(phi.cols());
    const std::size_t r = d + 1;
    const double fscale = scale_of(fv);
    const Eigen::Map<const Eigen::VectorXd> f(fv.data(), static_cast<Eigen::Index>(grid));

    std::vector<std::size_t> ref(r);
    for (std::size_t k = 0; k < r; ++k) ref[k] = (k * grid) / r;

    ExchangeOutcome out;
    Eigen::VectorXd e_vec(static_cast<Eigen::Index>(grid));
    for (int iter = 1;; ++iter) {
        Eigen::MatrixXd sys(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(r));
        for (std::size_t k = 0; k < r; ++k) {
            const auto row = static_cast<Eigen::Index>(k);
            sys.row(row).head(static_cast<Eigen::Index>(d)) = phi.row(static_cast<Eigen::Index>(ref[k]));
            sys(row, static_cast<Eigen::Index>(d)) = (k % 2 == 0) ? 1.0 : -1.0;
            rhs(row) = fv[ref[k]];
        }
        const Eigen::VectorXd sol = sys.fullPivLu().solve(rhs);
        const double level = sol(static_cast<Eigen::Index>(d));
        out.coeffs = sol.head(static_cast<Eigen::Index>(d));
        e_vec = f - phi * out.coeffs;

        std::size_t worst = 0;
        double worst_abs = -1.0;
        for (std::size_t j = 0; j < grid; ++j)
            if (std::abs(e_vec(static_cast<Eigen::Index>(j))) > worst_abs) {
                worst_abs = std::abs(e_vec(static_cast<Eigen::Index>(j)));
                worst = j;
            }
        out.history.push_back(std::abs(level));
        out.iterations = iter;
        out.error = worst_abs;
        if (worst_abs <= std::abs(level) * (1.0 + 1e-10) + 1e-14 * fscale) break;
        if (iter >= kExchangeDegradedAfter) {
            out.degraded = true;
            break;
        }

        // Swap the new extremum into the reference, keeping signs alternating
        // around the cycle.
        const auto pos = std::upper_bound(ref.begin(), ref.end(), worst) - ref.begin();
        const std::size_t left = pos == 0 ? r - 1 : static_cast<std::size_t>(pos - 1);
        const std::size_t right = (left + 1) % r;
        const double left_sign = ((left % 2 == 0) ? 1.0 : -1.0) * level;
        const double worst_err = e_vec(static_cast<Eigen::Index>(worst));
        const bool same_as_left = (worst_err > 0.0) == (left_sign > 0.0) && left_sign != 0.0;
        ref[same_as_left ? left : right] = worst;
        std::sort(ref.begin(), ref.end());
        ref.erase(std::unique(ref.begin(), ref.end()), ref.end());
        if (ref.size() != r) {
            out.degraded = true;
            break;
        }
    }
    out.err.assign(e_vec.data(), e_vec.data() + e_vec.size());
    return out;
}

// ---------------------------------------------------- differential correction

struct CorrectionOutcome {
    Eigen::VectorXd p;
    Eigen::VectorXd q;
    std::vector<double> err;
    double error = 0.0;
    int iterations = 0;
    std::vector<double> history;
    bool degraded = false;
    std::string note;
};

double rational_error(const Eigen::VectorXd& f, const Eigen::VectorXd& pv, const Eigen::VectorXd& qv,
                      std::vector<double>* err) {
    double worst = 0.0;
    if (err) err->resize(static_cast<std::size_t>(f.size()));
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        const double e = f(i) - pv(i) / qv(i);
        if (err) (*err)[static_cast<std::size_t>(i)] = e;
        worst = std::max(worst, std::abs(e));
    }
    return worst;
}

CorrectionOutcome differential_correction(const std::vector<double>& fv, const Eigen::MatrixXd& phi_p,
                                          const Eigen::MatrixXd& phi_q, Eigen::VectorXd p, Eigen::VectorXd q) {
    const Eigen::Index grid = phi_p.rows();
    const Eigen::Index dp = phi_p.cols();
    const Eigen::Index dq = phi_q.cols();
    const Eigen::Map<const Eigen::VectorXd> f(fv.data(), grid);
    const double fscale = scale_of(fv);

    CorrectionOutcome out;
    Eigen::VectorXd qv = phi_q * q;
    const double qmax = qv.maxCoeff();
    p /= qmax;
    q /= qmax;
    qv /= qmax;
    Eigen::VectorXd pv = phi_p * p;
    double delta = rational_error(f, pv, qv, nullptr);
    out.history.push_back(delta);

    const Eigen::Index vars = dp + dq + 1;
    Eigen::MatrixXd a(3 * grid, vars);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(3 * grid);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(vars);
    c(vars - 1) = 1.0;

    for (int iter = 1; iter <= kCorrectionMaxIter; ++iter) {
        if (delta <= 1e-14 * fscale) break;
        for (Eigen::Index i = 0; i < grid; ++i) {
            const Eigen::Index up = 3 * i;
            a.row(up).head(dp) = -phi_p.row(i);
            a.row(up).segment(dp, dq) = (f(i) - delta) * phi_q.row(i);
            a(up, vars - 1) = -qv(i);
            a.row(up + 1).head(dp) = phi_p.row(i);
            a.row(up + 1).segment(dp, dq) = (-f(i) - delta) * phi_q.row(i);
            a(up + 1, vars - 1) = -qv(i);
            a.row(up + 2).setZero();
            a.row(up + 2).segment(dp, dq) = phi_q.row(i);
            b(up + 2) = 1.0;
        }
        const lp::Solution sol = lp::minimize(c, a, b);
        if (sol.status != lp::Status::Optimal) {
            out.degraded = true;
            out.note = "linear subproblem failed; best iterate kept";
            break;
        }
        const double z = sol.y(vars - 1);
        if (z > -1e-12 * fscale) break;

        Eigen::VectorXd np = sol.y.head(dp);
        Eigen::VectorXd nq = sol.y.segment(dp, dq);
        Eigen::VectorXd nqv = phi_q * nq;
        const double nmax = nqv.maxCoeff();
        if (!(nmax > 0.0) || nqv.minCoeff() / nmax < kDenominatorFloor) {
            out.degraded = true;
            out.note = "denominator positivity lost; rolled back to previous iterate";
            break;
        }
        np /= nmax;
        nq /= nmax;
        nqv /= nmax;
        const Eigen::VectorXd npv = phi_p * np;
        const double nd = rational_error(f, npv, nqv, nullptr);
        out.iterations = iter;
        if (!(nd < delta)) {
            out.note = "stagnated; best iterate kept";
            break;
        }
        p = std::move(np);
        q = std::move(nq);
        pv = npv;
        qv = std::move(nqv);
        delta = nd;
        out.history.push_back(delta);
        if (iter == kCorrectionMaxIter) {
            out.degraded = true;
            out.note = "iteration limit reached; best iterate kept";
        }
    }
    out.error = rational_error(f, pv, qv, &out.err);
    out.p = std::move(p);
    out.q = std::move(q);
    return out;
}

std::vector<double> alternation_or_empty(const std::vector<double>& xs, const std::vector<double>& err, double error,
                                         double fscale, bool periodic) {
    if (error <= 1e-12 * fscale) return {};
    return extract_alternation(xs, err, periodic);
}

// f's nodes, or its own grid when it already matches the minimax grid.
std::size_t aligned_grid(const SampledFunction& f, std::size_t m, std::size_t fallback) {
    const std::size_t own = f.size() - 1;
    return own >= 16 * (2 * m + 2) ? own : fallback;
}

}  // namespace

// ---------------------------------------------------------- AlgebraicRational

AlgebraicRational::AlgebraicRational(Interval interval, std::vector<double> num, std::vector<double> den)
    : interval_(interval), num_(std::move(num)), den_(std::move(den)) {
    if (num_.empty() || den_.empty()) throw ShapeError("algebraic rational needs non-empty coefficient lists");
}

double AlgebraicRational::operator()(double x) const {
    const double t = (2.0 * x - interval_.lo - interval_.hi) / interval_.length();
    auto horner = [t](const std::vector<double>& c) {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
        return acc;
    };
    return horner(num_) / horner(den_);
}

double MinimaxResult::operator()(double x) const {
    return std::visit([x](const auto& r) { return r(x); }, approximant);
}

SampledFunction MinimaxResult::sampled_on(const SampledFunction& grid_like) const {
    return SampledFunction::sample(grid_like.interval(), grid_like.size(), [this](double x) { return (*this)(x); });
}

// ------------------------------------------------------------------- solvers

MinimaxResult minimax_trig(const SampledFunction& f, std::size_t m, std::size_t grid_m) {
    if (grid_m < 16 * (2 * m + 2)) throw DomainError("minimax_trig: grid must have at least 16(2m+2) points");
    const PeriodicSamples s = periodic_samples(f, grid_m);
    const Eigen::MatrixXd phi = design(s.x, 2 * m + 1, trig_row(m));
    ExchangeOutcome ex = exchange(s.f, phi);

    MinimaxResult out{trig_from(ex.coeffs), ex.error, ex.iterations, {}, std::move(ex.history), ex.degraded, {}};
    if (ex.degraded) out.note = "exchange did not settle; best reference kept";
    out.equioscillation_points = alternation_or_empty(s.x, ex.err, ex.error, scale_of(s.f), true);
    return out;
}

MinimaxResult minimax_rational_trig(const SampledFunction& f, std::size_t m, std::size_t n, std::size_t grid_m) {
    const MinimaxResult start = minimax_trig(f, m, grid_m);
    const PeriodicSamples s = periodic_samples(f, grid_m);
    const Eigen::MatrixXd phi_p = design(s.x, 2 * m + 1, trig_row(m));
    const Eigen::MatrixXd phi_q = design(s.x, 2 * n + 1, trig_row(n));

    const auto& t = std::get<TrigPoly>(start.approximant);
    Eigen::VectorXd p(static_cast<Eigen::Index>(2 * m + 1));
    p(0) = t.constant_term();
    for (std::size_t k = 1; k <= m; ++k) {
        p(static_cast<Eigen::Index>(2 * k - 1)) = t.cos_coeffs()[k - 1];
        p(static_cast<Eigen::Index>(2 * k)) = t.sin_coeffs()[k - 1];
    }
    Eigen::VectorXd q = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * n + 1));
    q(0) = 1.0;

    CorrectionOutcome dc = differential_correction(s.f, phi_p, phi_q, std::move(p), std::move(q));
    MinimaxResult out{RationalTrig(trig_from(dc.p), trig_from(dc.q)),
                      dc.error,
                      dc.iterations,
                      {},
                      std::move(dc.history),
                      dc.degraded,
                      dc.note};
    out.equioscillation_points = alternation_or_empty(s.x, dc.err, dc.error, scale_of(s.f), true);
    return out;
}

MinimaxResult minimax_rational_algebraic(const SampledFunction& f, std::size_t l, std::size_t m) {
    std::vector<double> xs(f.size());
    for (std::size_t j = 0; j < xs.size(); ++j) xs[j] = f.node(j);
    const std::vector<double> fv(f.values().begin(), f.values().end());
    if (xs.size() < 4 * (l + m + 2)) throw DomainError("minimax_rational_algebraic: grid too coarse for the degrees");
    const Eigen::MatrixXd phi_p = design(xs, l + 1, monomial_row(f.interval(), l));
    const Eigen::MatrixXd phi_q = design(xs, m + 1, monomial_row(f.interval(), m));

    const Eigen::Map<const Eigen::VectorXd> fmap(fv.data(), static_cast<Eigen::Index>(fv.size()));
    Eigen::VectorXd p = phi_p.colPivHouseholderQr().solve(fmap);
    Eigen::VectorXd q = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m + 1));
    q(0) = 1.0;

    CorrectionOutcome dc = differential_correction(fv, phi_p, phi_q, std::move(p), std::move(q));
    std::vector<double> num(dc.p.data(), dc.p.data() + dc.p.size());
    std::vector<double> den(dc.q.data(), dc.q.data() + dc.q.size());
    MinimaxResult out{AlgebraicRational(f.interval(), std::move(num), std::move(den)),
                      dc.error,
                      dc.iterations,
                      {},
                      std::move(dc.history),
                      dc.degraded,
                      dc.note};
    out.equioscillation_points = alternation_or_empty(xs, dc.err, dc.error, scale_of(fv), false);
    return out;
}

std::vector<double> extract_alternation(std::span<const double> xs, std::span<const double> err, bool periodic) {
    if (xs.size() != err.size()) throw ShapeError("extract_alternation: size mismatch");
    double peak = 0.0;
    for (double e : err) peak = std::max(peak, std::abs(e));
    if (peak == 0.0) return {};
    const double threshold = (1.0 - 1e-6) * peak;

    struct Extremum {
        std::size_t index;
        bool positive;
        double magnitude;
    };
    std::vector<Extremum> picks;
    for (std::size_t j = 0; j < err.size(); ++j) {
        const double a = std::abs(err[j]);
        if (a < threshold) continue;
        const bool pos = err[j] > 0.0;
        if (!picks.empty() && picks.back().positive == pos) {
            if (a > picks.back().magnitude) picks.back() = {j, pos, a};
        } else {
            picks.push_back({j, pos, a});
        }
    }
    if (periodic && picks.size() > 1 && picks.front().positive == picks.back().positive) {
        if (picks.back().magnitude > picks.front().magnitude) picks.front() = picks.back();
        picks.pop_back();
        std::sort(picks.begin(), picks.end(), [](const Extremum& a, const Extremum& b) { return a.index < b.index; });
    }
    std::vector<double> out;
    out.reserve(picks.size());
    for (const auto& p : picks) out.push_back(xs[p.index]);
    return out;
}

// ---------------------------------------------------------------- checks

double check_slack(double tol, double interpolation_estimate) { return 1e-4 + 10.0 * tol + interpolation_estimate; }

double fractal_minimax_bound_value(double e_mn, double f_norm, double alpha_sup, double id_minus_norm) {
    const double k = alpha_sup / (1.0 - alpha_sup);
    return (1.0 + alpha_sup * (id_minus_norm - 1.0)) / (1.0 - alpha_sup) * e_mn + k * id_minus_norm * f_norm;
}

FractalMinimaxBound fractal_minimax_bound(const SampledFunction& f, std::size_t m, std::size_t n,
                                          const Partition& partition, const ScalingVector& scaling,
                                          const BaseOperator& op, double tol) {
    const auto idm = op.id_minus_norm_bound();
    if (!idm) throw PreconditionError("fractal_minimax_bound needs a linear base operator");
    FractalMinimaxBound out;
    out.best = minimax_rational_trig(f, m, n, aligned_grid(f, m, kDefaultMinimaxGrid));
    out.e_mn = out.best.error;
    out.id_minus_norm = *idm;
    out.bound = fractal_minimax_bound_value(out.e_mn, sup_norm(f), scaling.sup_abs(), *idm);

    const SampledFunction r = out.best.sampled_on(f);
    const FractalResult fr = fractal_operator_apply(op, r, partition, scaling, f.size(), tol);
    out.witness = sup_distance(f, fr.values);
    // Witness and bound share f's grid, so no interpolation term enters.
    out.slack = check_slack(tol, 0.0);
    return out;
}

bool CorrectedChainReport::all_hold() const {
    return trend_ok && std::all_of(rows.begin(), rows.end(), [](const ChainRow& r) { return r.holds; });
}

CorrectedChainReport corrected_chain_check(const SampledFunction& f, std::size_t l, std::size_t m,
                                           const Partition& partition, const ScalingVector& scaling,
                                           const std::vector<int>& orders, double tol) {
    CorrectedChainReport out;
    out.best = minimax_rational_algebraic(f, l, m);
    const SampledFunction r = out.best.sampled_on(f);
    out.distance = sup_distance(f, r);
    out.slack = check_slack(tol, 0.0);
    const double s = scaling.sup_abs();
    const double k = s / (1.0 - s);
    for (int order : orders) {
        ChainRow row;
        row.order = order;
        const FractalResult fr =
            fractal_operator_apply(BaseOperator::bernstein(order), r, partition, scaling, f.size(), tol);
        row.lhs = sup_distance(f, fr.values);
        row.bernstein_term = sup_distance(r, bernstein_apply(r, order));
        row.rhs = out.distance + k * row.bernstein_term;
        row.holds = row.lhs <= row.rhs + out.slack;
        out.rows.push_back(row);
    }
    out.trend_ok = true;
    for (std::size_t j = 1; j < out.rows.size(); ++j) {
        const ChainRow& prev = out.rows[j - 1];
        const ChainRow& cur = out.rows[j];
        if (cur.order != 2 * prev.order) continue;
        if (prev.bernstein_term <= 1e-12 * std::max(1.0, sup_norm(r))) continue;
        if (cur.bernstein_term > 0.95 * prev.bernstein_term) out.trend_ok = false;
    }
    return out;
}

double weierstrass_scale_threshold(double epsilon, double t_norm, double id_minus_norm) {
    if (!(epsilon > 0.0)) throw DomainError("weierstrass_scale_threshold: epsilon must be positive");
    const double half = 0.5 * epsilon;
    return std::min(half / (half + id_minus_norm * t_norm), 1.0 - 1e-9);
}

double weierstrass_scale_threshold(double epsilon, const RationalTrig& t, const BaseOperator& op) {
    const auto idm = op.id_minus_norm_bound();
    if (!idm) throw PreconditionError("weierstrass_scale_threshold needs a linear base operator");
    const Interval period(-kPi, kPi);
    const SampledFunction ts = SampledFunction::sample(period, 8193, [&t](double x) { return t(x); });
    return weierstrass_scale_threshold(epsilon, sup_norm(ts), *idm);
}

NonnegApproximation nonneg_fractal_approx(const SampledFunction& f, double epsilon, const Partition& partition,
                                          const ScalingVector& scaling, const BaseOperator& op, double tol) {
    if (!(epsilon > 0.0)) throw DomainError("nonneg_fractal_approx: epsilon must be positive");
    if (f.min() < 0.0) throw PreconditionError("nonneg_fractal_approx needs f >= 0 on the grid");
    if (!op.fixes_constants()) throw PreconditionError("nonneg_fractal_approx needs L(1) = 1");
    const double half = 0.5 * epsilon;

    static constexpr std::pair<std::size_t, std::size_t> kLadder[] = {
        {0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {3, 2}, {4, 3}, {5, 4}, {6, 5}, {8, 6}, {10, 8}, {12, 10}};

    std::vector<BaseOperator> ops{op};
    int base_order = 0;
    if (const auto* bern = std::get_if<BaseOperator::Bernstein>(&op.kind())) {
        base_order = bern->order;
        for (int n = 2 * bern->order; n <= kMaxBernsteinOrder; n *= 2) ops.push_back(BaseOperator::bernstein(n));
    }

    // Higher degrees shrink ||f - t|| but rarely the base-operator term, so the
    // search stops after a few admissible rungs that all miss eps/2.
    constexpr int kMaxFailedRungs = 3;
    int failed_rungs = 0;
    double best_inner = std::numeric_limits<double>::infinity();
    for (const auto& [m, n] : kLadder) {
        if (f.size() - 1 < 16 * (2 * m + 2)) break;
        const MinimaxResult t = minimax_rational_trig(f, m, n, aligned_grid(f, m, kDefaultMinimaxGrid));
        if (!(t.error < half)) continue;
        const SampledFunction ts = t.sampled_on(f);
        int order = base_order;
        for (const BaseOperator& candidate : ops) {
            if (const auto* bern = std::get_if<BaseOperator::Bernstein>(&candidate.kind())) order = bern->order;
            const FractalResult fr = fractal_operator_apply(candidate, ts, partition, scaling, f.size(), tol);
            const double inner = sup_distance(f, fr.values);
            best_inner = std::min(best_inner, inner);
            if (!(inner < half)) continue;
            NonnegApproximation out{fr.values.plus_constant(half), 0.0, inner, m, n,
                                    std::holds_alternative<BaseOperator::Bernstein>(candidate.kind()) ? order : 0};
            out.gap = sup_distance(f, out.approximant);
            if (out.approximant.min() < 0.0) throw InvariantError("nonneg_fractal_approx produced a negative value");
            return out;
        }
        if (++failed_rungs >= kMaxFailedRungs) break;
    }
    std::ostringstream os;
    os.precision(6);
    os << "nonneg_fractal_approx: no admissible (m, n) reached eps/2 = " << half << " (best inner gap " << best_inner
       << "); try larger degrees, a smaller |alpha| or a finer base operator";
    throw DegreeExhaustedError(os.str());
}

JacksonReport jackson_error_report(const SampledFunction& f, int n) {
    const SampledFunction lf = varma_apply(f, n);
    JacksonReport rep;
    rep.actual = sup_distance(f, lf);
    const double root3 = std::sqrt(3.0);
    rep.bound = 2.0 * modulus_of_continuity(f, kPi * root3 / n);
    rep.corollary_bound = 2.0 * modulus_of_continuity(f, 2.0 * kPi * root3 / (n + 2));
    for (double x : varma_nodes_of(n)) rep.node_error = std::max(rep.node_error, std::abs(f(x) - varma_at(f, n, x)));
    return rep;
}

std::vector<double> density_trend(const SampledFunction& t, const Partition& partition, const ScalingVector& scaling,
                                  const std::vector<int>& orders, double tol) {
    std::vector<double> out;
    out.reserve(orders.size());
    for (int n : orders) {
        const FractalResult fr =
            fractal_operator_apply(BaseOperator::bernstein(n), t, partition, scaling, t.size(), tol);
        out.push_back(sup_distance(t, fr.values));
    }
    return out;
}

}  // namespace fractalfn
