#pragma once

// Small dense linear programs with few free variables and many inequality
// rows, as produced by discrete differential correction:
//
//     minimize c^T y   subject to   A y <= b,   y free.
//
// Solved through the dual  min b^T lambda, A^T lambda = -c, lambda >= 0  with
// a two-phase tableau simplex; y is read back from the simplex multipliers.

#include <Eigen/Dense>

namespace fractalfn::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Solution {
    Status status = Status::IterationLimit;
    Eigen::VectorXd y;
    double objective = 0.0;
    int pivots = 0;
};

Solution minimize(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace fractalfn::lp
