#include "fractalfn/lp.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace fractalfn::lp {

namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kPriceTol = 1e-10;
constexpr double kPivotTol = 1e-11;
constexpr int kMaxPivots = 50000;
constexpr int kDegenerateBeforeBland = 50;

struct Simplex {
    Tableau t;                 // rows 0..d-1 constraints, row d reduced costs
    std::vector<Eigen::Index> basis;
    Eigen::Index rhs;          // column index of the right-hand side
    int pivots = 0;

    Eigen::Index rows() const { return static_cast<Eigen::Index>(basis.size()); }

    void pivot(Eigen::Index r, Eigen::Index e) {
        t.row(r) /= t(r, e);
        for (Eigen::Index i = 0; i < t.rows(); ++i) {
            if (i == r) continue;
            const double factor = t(i, e);
            if (factor != 0.0) t.row(i) -= factor * t.row(r);
        }
        basis[static_cast<std::size_t>(r)] = e;
        ++pivots;
    }

    void price(const Eigen::VectorXd& cost) {
        const Eigen::Index d = rows();
        t.row(d).head(cost.size()) = cost.transpose();
        t(d, rhs) = 0.0;
        for (Eigen::Index r = 0; r < d; ++r) {
            const double cb = cost(basis[static_cast<std::size_t>(r)]);
            if (cb != 0.0) t.row(d) -= cb * t.row(r);
        }
    }

    // Returns false when the objective is unbounded below.
    std::optional<bool> run(Eigen::Index entering_limit) {
        const Eigen::Index d = rows();
        int degenerate_streak = 0;
        while (pivots < kMaxPivots) {
            Eigen::Index e = -1;
            if (degenerate_streak > kDegenerateBeforeBland) {
                for (Eigen::Index j = 0; j < entering_limit; ++j)
                    if (t(d, j) < -kPriceTol) {
                        e = j;
                        break;
                    }
            } else {
                double best = -kPriceTol;
                for (Eigen::Index j = 0; j < entering_limit; ++j)
                    if (t(d, j) < best) {
                        best = t(d, j);
                        e = j;
                    }
            }
            if (e < 0) return true;

            Eigen::Index leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (Eigen::Index r = 0; r < d; ++r) {
                const double coef = t(r, e);
                if (coef <= kPivotTol) continue;
                const double ratio = std::max(0.0, t(r, rhs)) / coef;
                if (ratio < best_ratio ||
                    (ratio == best_ratio && basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
                    best_ratio = ratio;
                    leave = r;
                }
            }
            if (leave < 0) return false;
            degenerate_streak = best_ratio == 0.0 ? degenerate_streak + 1 : 0;
            pivot(leave, e);
        }
        return std::nullopt;
    }
};

}  // namespace

Solution minimize(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    const Eigen::Index k = a.rows();
    const Eigen::Index d = a.cols();
    Solution out;

    Eigen::VectorXd sign(d);
    Simplex s;
    s.rhs = k + d;
    s.t = Tableau::Zero(d + 1, k + d + 1);
    s.basis.resize(static_cast<std::size_t>(d));
    for (Eigen::Index r = 0; r < d; ++r) {
        const double h = -c(r);
        sign(r) = h < 0.0 ? -1.0 : 1.0;
        s.t.row(r).head(k) = sign(r) * a.col(r).transpose();
        s.t(r, k + r) = 1.0;
        s.t(r, s.rhs) = sign(r) * h;
        s.basis[static_cast<std::size_t>(r)] = k + r;
    }

    // Phase 1: drive the artificial variables to zero.
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(k + d);
    cost.tail(d).setOnes();
    s.price(cost);
    auto phase1 = s.run(k + d);
    out.pivots = s.pivots;
    if (!phase1.has_value()) return out;
    const double scale = 1.0 + c.cwiseAbs().maxCoeff();
    if (-s.t(d, s.rhs) > 1e-9 * scale) {
        out.status = Status::Unbounded;
        return out;
    }
    for (Eigen::Index r = 0; r < d; ++r) {
        if (s.basis[static_cast<std::size_t>(r)] < k) continue;
        Eigen::Index best = -1;
        double mag = 1e-9;
        for (Eigen::Index j = 0; j < k; ++j)
            if (std::abs(s.t(r, j)) > mag) {
                mag = std::abs(s.t(r, j));
                best = j;
            }
        if (best >= 0) s.pivot(r, best);
    }

    // Phase 2: minimize b^T lambda with artificial columns barred from entering.
    cost.setZero();
    cost.head(k) = b;
    s.price(cost);
    auto phase2 = s.run(k);
    out.pivots = s.pivots;
    if (!phase2.has_value()) return out;
    if (!*phase2) {
        out.status = Status::Infeasible;
        return out;
    }

    out.y.resize(d);
    for (Eigen::Index r = 0; r < d; ++r) out.y(r) = -sign(r) * s.t(d, k + r);
    out.objective = c.dot(out.y);
    out.status = Status::Optimal;
    return out;
}

}  // namespace fractalfn::lp
