#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "sseig/cg.hpp"
#include "sseig/errors.hpp"
#include "sseig/lanczos.hpp"
#include "sseig/linear_operator.hpp"
#include "sseig/projection.hpp"
#include "test_support.hpp"

using namespace sseig;

namespace {

LinearOperator dense_op(const Eigen::MatrixXd& m, bool symmetric = true) {
  return LinearOperator(m.rows(), symmetric,
                        [m](const Eigen::VectorXd& x) { return m * x; });
}

}  // namespace

TEST_CASE("conjugate gradients solve a dense SPD system") {
  Eigen::MatrixXd b = Eigen::MatrixXd::Random(12, 12);
  Eigen::MatrixXd m = b * b.transpose() + 12.0 * Eigen::MatrixXd::Identity(12, 12);
  Eigen::VectorXd rhs = Eigen::VectorXd::LinSpaced(12, -1.0, 1.0);
  CgResult res = cg_solve(dense_op(m), rhs, 1e-12);
  CHECK((m * res.x - rhs).norm() < 1e-9 * rhs.norm());
  CHECK(res.iterations <= 12 + 2);  // Krylov exactness plus rounding slack
}

TEST_CASE("conjugate gradients handle consistent singular systems") {
  // Projector-shaped operator: the solution lives in the range.
  Eigen::VectorXd dir = Eigen::VectorXd::Ones(8).normalized();
  Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(8, 8) - dir * dir.transpose();
  Eigen::MatrixXd m = proj * (3.0 * Eigen::MatrixXd::Identity(8, 8)) * proj;
  Eigen::VectorXd rhs = proj * Eigen::VectorXd::Random(8);
  CgResult res = cg_solve(dense_op(m), rhs, 1e-12);
  CHECK((m * res.x - rhs).norm() < 1e-10);
}

TEST_CASE("conjugate gradients report failure on an exhausted budget") {
  Eigen::MatrixXd b = Eigen::MatrixXd::Random(30, 30);
  Eigen::MatrixXd m = b * b.transpose() + 1e-8 * Eigen::MatrixXd::Identity(30, 30);
  Eigen::VectorXd rhs = Eigen::VectorXd::Random(30);
  CHECK_THROWS_AS(cg_solve(dense_op(m), rhs, 1e-14, 2), numerical_error);
}

TEST_CASE("lanczos finds the largest algebraic eigenvalue, not magnitude") {
  Eigen::VectorXd diag(5);
  diag << -10.0, -4.0, 0.0, 1.0, 2.5;
  LanczosResult res = largest_algebraic_eigenvalue(dense_op(diag.asDiagonal()));
  CHECK(res.value == doctest::Approx(2.5).epsilon(1e-9));
  CHECK(std::abs(res.vector[4]) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("lanczos restricted to a complement skips the top mode") {
  Eigen::VectorXd diag(6);
  diag << 0.0, 0.2, 0.4, 0.6, 0.8, 1.0;
  Eigen::MatrixXd top = Eigen::MatrixXd::Zero(6, 1);
  top(5, 0) = 1.0;  // eigenvector of the top eigenvalue
  LanczosResult res =
      largest_algebraic_eigenvalue(dense_op(diag.asDiagonal()), 1e-12, 500, 7, &top);
  CHECK(res.value == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(std::abs(res.vector[5]) < 1e-8);
}

TEST_CASE("symmetry defect flags a lopsided operator") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(6, 6);
  m(0, 1) = 0.5;  // one side only
  CHECK(dense_op(m, false).symmetry_defect(3) > 1e-6);
  CHECK(dense_op(Eigen::MatrixXd(m + m.transpose())).symmetry_defect(3) < 1e-12);
}

TEST_CASE("the projection basis starts with the trivial direction") {
  Graph g = testsup::erdos_renyi_connected(14, 0.35, 0.5, 1.5, 61);
  ProjectionBasis basis(g);
  CHECK(basis.count() == 1);
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(g.node_count());
  CHECK(basis.apply_combinatorial(ones).norm() < 1e-10);
  // The surviving part of a random vector is degree-orthogonal to 1.
  Eigen::VectorXd z = Eigen::VectorXd::Random(g.node_count());
  CHECK(std::abs(g.dot_d(basis.apply_combinatorial(z), ones)) < 1e-10);
}

TEST_CASE("the projector is idempotent and self-adjoint in the degree geometry") {
  Graph g = testsup::erdos_renyi_connected(16, 0.3, 0.5, 1.5, 71);
  ProjectionBasis basis(g);
  basis.append(Eigen::VectorXd::Random(g.node_count()));
  basis.append(Eigen::VectorXd::Random(g.node_count()));
  CHECK(basis.count() == 3);

  Eigen::VectorXd z = Eigen::VectorXd::Random(g.node_count());
  Eigen::VectorXd w = Eigen::VectorXd::Random(g.node_count());
  Eigen::VectorXd pz = basis.apply_combinatorial(z);
  CHECK((basis.apply_combinatorial(pz) - pz).norm() < 1e-10);
  CHECK(g.dot_d(pz, w) == doctest::Approx(g.dot_d(z, basis.apply_combinatorial(w)))
                              .epsilon(1e-9));
}

TEST_CASE("appended columns are degree-orthonormal against the whole basis") {
  Graph g = testsup::erdos_renyi_connected(18, 0.3, 0.5, 1.5, 81);
  ProjectionBasis basis(g);
  basis.append(Eigen::VectorXd::Random(g.node_count()));
  basis.append(Eigen::VectorXd::Random(g.node_count()));
  const Eigen::MatrixXd& x = basis.combinatorial();
  Eigen::MatrixXd gram = x.transpose() * g.degrees().asDiagonal() * x;
  CHECK((gram - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);

  // The normalized form is the half-degree scaling of the same columns.
  const Eigen::MatrixXd& y = basis.normalized();
  Eigen::MatrixXd expect = g.sqrt_degrees().asDiagonal() * x;
  CHECK((y - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("the two projector forms are conjugate by the half-degree scaling") {
  Graph g = testsup::erdos_renyi_connected(15, 0.35, 0.5, 1.5, 91);
  ProjectionBasis basis(g);
  basis.append(Eigen::VectorXd::Random(g.node_count()));
  Eigen::VectorXd z = Eigen::VectorXd::Random(g.node_count());
  Eigen::VectorXd lhs = g.sqrt_degrees().cwiseProduct(basis.apply_combinatorial(z));
  Eigen::VectorXd rhs =
      basis.apply_normalized(g.sqrt_degrees().cwiseProduct(z));
  CHECK((lhs - rhs).norm() < 1e-10);
}
