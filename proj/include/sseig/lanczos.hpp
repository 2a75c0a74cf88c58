#ifndef SSEIG_LANCZOS_HPP
#define SSEIG_LANCZOS_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "sseig/linear_operator.hpp"

namespace sseig {

struct LanczosResult {
  double value = 0.0;
  Eigen::VectorXd vector;
  int iterations = 0;
  double residual = 0.0;
};

// Largest algebraic (not largest magnitude) eigenvalue of a symmetric
// operator by Lanczos with full reorthogonalization. When orthogonal_to is
// given, the start vector and every Krylov vector are kept orthogonal to its
// columns, so the iteration resolves the spectrum restricted to that
// complement (the columns must span an invariant subspace). Throws
// numerical_error if the residual tol * |value| is not reached.
LanczosResult largest_algebraic_eigenvalue(const LinearOperator& op, double tol = 1e-10,
                                           int max_iter = 5000, std::uint64_t rng_seed = 12345,
                                           const Eigen::MatrixXd* orthogonal_to = nullptr);

}  // namespace sseig

#endif
