#ifndef SSEIG_PROJECTION_HPP
#define SSEIG_PROJECTION_HPP

#include <Eigen/Dense>

#include "sseig/graph.hpp"

namespace sseig {

// Projector onto the degree-orthogonal complement of an accepted basis. The
// basis always starts with the trivial direction (the constant vector) and
// grows by D-orthonormal solution vectors. Two coupled forms are kept:
//   combinatorial X with X^T D X = I, projector I - D X (X^T D^2 X)^{-1} X^T D
//   normalized   Y = D^{1/2} X with Y^T Y = I, projector I - Y Y^T
class ProjectionBasis {
 public:
  explicit ProjectionBasis(const Graph& g);

  // D-orthogonalizes x against the current columns, D-normalizes, appends.
  void append(const Eigen::VectorXd& x);

  Eigen::Index count() const { return X_.cols(); }
  const Eigen::MatrixXd& combinatorial() const { return X_; }
  const Eigen::MatrixXd& normalized() const { return Y_; }
  const Graph& graph() const { return *g_; }

  // I - D X (X^T D^2 X)^{-1} X^T D applied to z.
  Eigen::VectorXd apply_combinatorial(const Eigen::VectorXd& z) const;
  // I - Y Y^T applied to z.
  Eigen::VectorXd apply_normalized(const Eigen::VectorXd& z) const;

 private:
  void refresh_gram();

  const Graph* g_;
  Eigen::MatrixXd X_;
  Eigen::MatrixXd DX_;
  Eigen::MatrixXd Y_;
  Eigen::LLT<Eigen::MatrixXd> gram_llt_;
};

}  // namespace sseig

#endif
