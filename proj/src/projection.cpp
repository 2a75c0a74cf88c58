#include "sseig/projection.hpp"

#include <cmath>

#include "sseig/errors.hpp"

namespace sseig {

ProjectionBasis::ProjectionBasis(const Graph& g) : g_(&g) {
  const Eigen::Index n = g.node_count();
  if (n < 2) throw invalid_argument("projection basis needs at least 2 nodes");
  if (!(g.volume() > 0.0)) throw invalid_argument("projection basis needs a nonempty graph");
  X_ = Eigen::MatrixXd::Constant(n, 1, 1.0 / std::sqrt(g.volume()));
  refresh_gram();
}

void ProjectionBasis::refresh_gram() {
  DX_ = g_->degrees().asDiagonal() * X_;
  Y_ = g_->sqrt_degrees().asDiagonal() * X_;
  Eigen::MatrixXd gram = DX_.transpose() * DX_;
  gram_llt_.compute(gram);
  if (gram_llt_.info() != Eigen::Success)
    throw numerical_error("projection basis gram matrix is not positive definite");
}

void ProjectionBasis::append(const Eigen::VectorXd& x) {
  if (x.size() != X_.rows()) throw invalid_argument("basis append: dimension mismatch");
  Eigen::VectorXd v = x;
  // Two Gram-Schmidt passes in the D inner product keep Y^T Y = I tight.
  for (int pass = 0; pass < 2; ++pass)
    v.noalias() -= X_ * (DX_.transpose() * v);
  double norm = g_->norm_d(v);
  if (!(norm > 1e-12 * g_->norm_d(x)))
    throw numerical_error("basis append: vector lies in the span of the basis");
  v /= norm;
  X_.conservativeResize(Eigen::NoChange, X_.cols() + 1);
  X_.col(X_.cols() - 1) = v;
  refresh_gram();
}

Eigen::VectorXd ProjectionBasis::apply_combinatorial(const Eigen::VectorXd& z) const {
  return z - DX_ * gram_llt_.solve(DX_.transpose() * z);
}

Eigen::VectorXd ProjectionBasis::apply_normalized(const Eigen::VectorXd& z) const {
  return z - Y_ * (Y_.transpose() * z);
}

}  // namespace sseig
