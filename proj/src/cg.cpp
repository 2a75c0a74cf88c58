#include "sseig/cg.hpp"

#include <cmath>
#include <string>

#include "sseig/errors.hpp"

namespace sseig {

CgResult cg_solve(const LinearOperator& op, const Eigen::VectorXd& rhs, double tol, int max_iter) {
  const Eigen::Index n = op.dim();
  if (rhs.size() != n) throw invalid_argument("cg_solve: rhs dimension mismatch");
  if (!(tol > 0.0)) throw invalid_argument("cg_solve: tolerance must be positive");
  if (max_iter < 0) max_iter = static_cast<int>(10 * n);

  CgResult res;
  res.x = Eigen::VectorXd::Zero(n);
  const double b_norm = rhs.norm();
  if (b_norm == 0.0) return res;

  Eigen::VectorXd r = rhs;
  Eigen::VectorXd p = r;
  double rho = r.squaredNorm();
  double r_norm = b_norm;

  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd ap = op(p);
    double curvature = p.dot(ap);
    if (!(curvature > 0.0)) {
      if (std::abs(curvature) <= 1e-14 * p.squaredNorm() && r_norm <= tol * b_norm) break;
      throw numerical_error("cg_solve: non-positive curvature (indefinite operator), residual " +
                            std::to_string(r_norm / b_norm));
    }
    double alpha = rho / curvature;
    res.x += alpha * p;
    r -= alpha * ap;
    ++res.iterations;
    double rho_next = r.squaredNorm();
    r_norm = std::sqrt(rho_next);
    if (!std::isfinite(r_norm) || r_norm > 1e6 * b_norm)
      throw numerical_error("cg_solve: diverged, residual " + std::to_string(r_norm / b_norm));
    if (r_norm <= tol * b_norm) break;
    p = r + (rho_next / rho) * p;
    rho = rho_next;
  }

  res.relative_residual = r_norm / b_norm;
  if (res.relative_residual > tol)
    throw numerical_error("cg_solve: no convergence in " + std::to_string(res.iterations) +
                          " iterations, residual " + std::to_string(res.relative_residual));
  return res;
}

}  // namespace sseig
