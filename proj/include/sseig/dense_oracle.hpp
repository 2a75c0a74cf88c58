#ifndef SSEIG_DENSE_ORACLE_HPP
#define SSEIG_DENSE_ORACLE_HPP

#include <Eigen/Dense>

#include "sseig/graph.hpp"
#include "sseig/projection.hpp"

namespace sseig {

// Brute-force references for cross-checking the iterative paths. Everything
// here is O(n^3) dense and guarded to small graphs.
inline constexpr Eigen::Index kDenseOracleMaxNodes = 200;

Eigen::MatrixXd dense_adjacency(const Graph& g);
Eigen::MatrixXd dense_laplacian(const Graph& g);

// Moore-Penrose pseudoinverse with singular values below
// cutoff_rel * sigma_max treated as zero.
Eigen::MatrixXd dense_pseudo_inverse(const Eigen::MatrixXd& m, double cutoff_rel = 1e-12);

// pinv(FF^T (L - gamma D) FF^T) FF^T D s, D-normalized, sign fixed so the
// correlation with the seed is nonnegative.
Eigen::VectorXd dense_oracle_solve(const Graph& g, const ProjectionBasis& basis,
                                   const Eigen::VectorXd& seed_embedded, double gamma);

struct GeneralizedEigenPairs {
  Eigen::VectorXd values;   // ascending, first is 0 for connected graphs
  Eigen::MatrixXd vectors;  // columns, D-orthonormal
};

// Solves L x = lambda D x densely.
GeneralizedEigenPairs dense_generalized_eigenpairs(const Graph& g);

}  // namespace sseig

#endif
