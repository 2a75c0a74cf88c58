#include "sseig/dense_oracle.hpp"

#include <cmath>
#include <string>

#include "sseig/errors.hpp"

namespace sseig {

namespace {

void guard_size(const Graph& g, const char* who) {
  if (g.node_count() > kDenseOracleMaxNodes)
    throw invalid_argument(std::string(who) + " refuses graphs larger than " +
                           std::to_string(kDenseOracleMaxNodes) + " nodes");
}

}  // namespace

Eigen::MatrixXd dense_adjacency(const Graph& g) {
  guard_size(g, "dense_adjacency");
  return Eigen::MatrixXd(g.adjacency());
}

Eigen::MatrixXd dense_laplacian(const Graph& g) {
  guard_size(g, "dense_laplacian");
  Eigen::MatrixXd l = -dense_adjacency(g);
  l.diagonal() += g.degrees();
  return l;
}

Eigen::MatrixXd dense_pseudo_inverse(const Eigen::MatrixXd& m, double cutoff_rel) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  double cutoff = sv.size() > 0 ? cutoff_rel * sv[0] : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) inv[i] = 1.0 / sv[i];
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Eigen::VectorXd dense_oracle_solve(const Graph& g, const ProjectionBasis& basis,
                                   const Eigen::VectorXd& seed_embedded, double gamma) {
  guard_size(g, "dense_oracle_solve");
  const Eigen::Index n = g.node_count();
  Eigen::MatrixXd d = g.degrees().asDiagonal();
  const Eigen::MatrixXd& x_basis = basis.combinatorial();
  Eigen::MatrixXd dx = d * x_basis;
  Eigen::MatrixXd gram = dx.transpose() * dx;
  Eigen::MatrixXd proj =
      Eigen::MatrixXd::Identity(n, n) - dx * gram.ldlt().solve(dx.transpose());

  Eigen::MatrixXd op = proj * (dense_laplacian(g) - gamma * d) * proj;
  Eigen::VectorXd x = dense_pseudo_inverse(op) * (proj * (d * seed_embedded));

  double norm = g.norm_d(x);
  if (!(norm > 0.0))
    throw numerical_error("dense_oracle_solve: solution vanished");
  x /= norm;
  if (g.dot_d(x, seed_embedded) < 0.0) x = -x;
  return x;
}

GeneralizedEigenPairs dense_generalized_eigenpairs(const Graph& g) {
  guard_size(g, "dense_generalized_eigenpairs");
  if (g.degrees().minCoeff() <= 0.0)
    throw invalid_argument("dense_generalized_eigenpairs needs strictly positive degrees");
  Eigen::MatrixXd l = dense_laplacian(g);
  Eigen::MatrixXd d = g.degrees().asDiagonal();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(l, d);
  if (es.info() != Eigen::Success)
    throw numerical_error("dense generalized eigensolver failed");
  GeneralizedEigenPairs out;
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  for (Eigen::Index j = 0; j < out.vectors.cols(); ++j) {
    Eigen::Index big = 0;
    out.vectors.col(j).cwiseAbs().maxCoeff(&big);
    if (out.vectors(big, j) < 0.0) out.vectors.col(j) = -out.vectors.col(j);
  }
  return out;
}

}  // namespace sseig
