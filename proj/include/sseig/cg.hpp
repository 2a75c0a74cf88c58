#ifndef SSEIG_CG_HPP
#define SSEIG_CG_HPP

#include <Eigen/Dense>

#include "sseig/linear_operator.hpp"

namespace sseig {

struct CgResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double relative_residual = 0.0;
};

// Conjugate gradients for a symmetric positive semidefinite operator with the
// right-hand side in its range. Stops at ||r|| <= tol ||b||; throws
// numerical_error (carrying the final residual) on stagnation, divergence, or
// an exhausted iteration budget. max_iter < 0 selects 10 * dim.
CgResult cg_solve(const LinearOperator& op, const Eigen::VectorXd& rhs, double tol = 1e-8,
                  int max_iter = -1);

}  // namespace sseig

#endif
