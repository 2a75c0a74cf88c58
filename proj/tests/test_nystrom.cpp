#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sseig/dense_oracle.hpp"
#include "sseig/errors.hpp"
#include "sseig/nystrom.hpp"
#include "sseig/seed.hpp"
#include "sseig/solver.hpp"
#include "test_support.hpp"

using namespace sseig;

TEST_CASE("a full sample reproduces the normalized adjacency exactly") {
  Graph g = testsup::erdos_renyi_connected(18, 0.3, 0.2, 1.0, 19);
  const Eigen::Index n = g.node_count();
  NystromModel model = build_nystrom(g, n, 5);
  REQUIRE(model.V.cols() == n);
  CHECK((model.V.transpose() * model.V - Eigen::MatrixXd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff() < 1e-10);

  Eigen::MatrixXd normalized =
      g.inv_sqrt_degrees().asDiagonal() * dense_adjacency(g) *
      g.inv_sqrt_degrees().asDiagonal();
  Eigen::MatrixXd recon =
      model.V * model.lambda.asDiagonal() * model.V.transpose();
  CHECK((recon - normalized).cwiseAbs().maxCoeff() < 1e-10);
  // Negative modes are retained at full rank.
  CHECK(model.lambda.minCoeff() < 0.0);
  CHECK(model.discarded_mass == 0.0);
}

TEST_CASE("partial samples keep an orthonormal factor and positive modes") {
  Graph g = testsup::erdos_renyi_connected(40, 0.25, 0.2, 1.0, 29);
  NystromModel model = build_nystrom(g, 12, 7);
  REQUIRE(model.sample_indices.size() == 12);
  for (std::size_t i = 1; i < model.sample_indices.size(); ++i)
    CHECK(model.sample_indices[i] > model.sample_indices[i - 1]);
  const Eigen::Index r = model.V.cols();
  CHECK(r <= 12);
  CHECK((model.V.transpose() * model.V - Eigen::MatrixXd::Identity(r, r))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  CHECK(model.lambda.minCoeff() > 0.0);
  CHECK(model.discarded_mass >= 0.0);
  CHECK(model.graph_digest == g.digest());
}

TEST_CASE("landmark sampling is deterministic in the seed") {
  Graph g = testsup::erdos_renyi_connected(30, 0.25, 0.2, 1.0, 39);
  NystromModel a = build_nystrom(g, 10, 99);
  NystromModel b = build_nystrom(g, 10, 99);
  CHECK(a.sample_indices == b.sample_indices);
  CHECK((a.V.array() == b.V.array()).all());
}

TEST_CASE("models round trip through the binary format") {
  Graph g = testsup::erdos_renyi_connected(25, 0.3, 0.2, 1.0, 49);
  NystromModel model = build_nystrom(g, 9, 3);
  const std::string path = "nystrom_roundtrip.bin";
  save_nystrom(model, path);
  NystromModel back = load_nystrom(path);
  CHECK(back.sample_indices == model.sample_indices);
  CHECK(back.graph_digest == model.graph_digest);
  CHECK(back.discarded_mass == model.discarded_mass);
  CHECK((back.V.array() == model.V.array()).all());
  CHECK((back.lambda.array() == model.lambda.array()).all());
  std::remove(path.c_str());
}

TEST_CASE("corrupted model files are rejected") {
  Graph g = testsup::erdos_renyi_connected(20, 0.3, 0.2, 1.0, 59);
  NystromModel model = build_nystrom(g, 8, 3);
  const std::string path = "nystrom_corrupt.bin";
  save_nystrom(model, path);

  std::string bytes = testsup::slurp(path);
  bytes[bytes.size() / 2] ^= 0x40;
  {
    std::ofstream out(path, std::ios::binary);
    out << bytes;
  }
  CHECK_THROWS_AS(load_nystrom(path), io_error);

  {
    std::ofstream out(path, std::ios::binary);
    out << bytes.substr(0, bytes.size() / 3);
  }
  CHECK_THROWS_AS(load_nystrom(path), io_error);

  {
    std::ofstream out(path, std::ios::binary);
    out << "not a model file";
  }
  CHECK_THROWS_AS(load_nystrom(path), io_error);
  CHECK_THROWS_AS(load_nystrom("missing_model_file.bin"), io_error);
  std::remove(path.c_str());
}

TEST_CASE("the two low-rank solve forms agree on the first vector") {
  Graph g = testsup::erdos_renyi_connected(30, 0.25, 0.2, 1.0, 69);
  SeedVector seed = embed_seed(g, {{3, 1.0}});
  NystromModel model = build_nystrom(g, g.node_count(), 11);
  ProjectionBasis basis(g);
  for (double gamma : {-3.0, -0.4, 0.1}) {
    GammaSolve w = woodbury_leading_solve(g, model, seed.embedded, gamma);
    GammaSolve l = lagrangian_project_solve(g, model, basis, seed.embedded, gamma);
    CHECK(std::abs(testsup::cos_d(g, w.x, l.x)) > 1.0 - 1e-9);
    CHECK(w.correlation == doctest::Approx(l.correlation).epsilon(1e-8));
  }
}

TEST_CASE("full-rank low-rank solves match the projected conjugate gradient path") {
  Graph g = testsup::erdos_renyi_connected(35, 0.25, 0.2, 1.0, 79);
  SeedVector seed = embed_seed(g, {{6, 1.0}});
  NystromModel model = build_nystrom(g, g.node_count(), 13);
  ProjectionBasis basis(g);
  for (double gamma : {-2.0, -0.5}) {
    GammaSolve low = lagrangian_project_solve(g, model, basis, seed.embedded, gamma);
    GammaSolve exact = solve_at_gamma(g, basis, seed.embedded, gamma, 1e-12);
    CHECK(g.norm_d(low.x - exact.x) < 1e-6);
  }
}

TEST_CASE("the resolvent expansion hits a pole at a model eigenvalue") {
  Graph g = testsup::erdos_renyi_connected(22, 0.3, 0.2, 1.0, 89);
  SeedVector seed = embed_seed(g, {{1, 1.0}});
  NystromModel model = build_nystrom(g, g.node_count(), 17);
  // Pick an interior eigenvalue and shift exactly onto the pole.
  double lam = model.lambda[model.lambda.size() / 2];
  double gamma = 1.0 - lam;
  CHECK_THROWS_AS(woodbury_leading_solve(g, model, seed.embedded, gamma),
                  numerical_error);
}

TEST_CASE("the low-rank feasible top matches the exact one at full rank") {
  Graph star = Graph::from_edges(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
  NystromModel sm = build_nystrom(star, 4, 1);
  ProjectionBasis sb(star);
  UpperBound low = lowrank_upper_bound(star, sm, sb);
  CHECK(low.gamma_top == doctest::Approx(1.0).epsilon(1e-9));

  Graph g = testsup::erdos_renyi_connected(28, 0.25, 0.2, 1.0, 101);
  NystromModel model = build_nystrom(g, g.node_count(), 23);
  ProjectionBasis basis(g);
  UpperBound a = lowrank_upper_bound(g, model, basis);
  UpperBound b = compute_upper_bound(g, basis, 1e-12);
  CHECK(a.gamma_top == doctest::Approx(b.gamma_top).epsilon(1e-8));
}

TEST_CASE("full-rank model searches land on the exact-path solution") {
  Graph g = testsup::erdos_renyi_connected(30, 0.25, 0.2, 1.0, 111);
  SeedVector seed = embed_seed(g, {{8, 1.0}});
  SolverConfig cfg;
  cfg.k = 2;
  cfg.kappa = {0.3, 0.2};
  cfg.epsilon = 1e-6;
  NystromModel model = build_nystrom(g, g.node_count(), 19);
  SsEigenSolution low = solve_nystrom(g, model, seed, cfg);
  SsEigenSolution exact = solve(g, seed, cfg);
  REQUIRE(low.gammas.size() == 2);
  for (int t = 0; t < 2; ++t) {
    // Both searches stop within epsilon of the same target, so the accepted
    // shifts agree to the bisection resolution, not to machine precision.
    CHECK(std::abs(low.gammas[t] - exact.gammas[t]) <
          1e-5 * std::max(1.0, std::abs(exact.gammas[t])));
    CHECK(std::abs(testsup::cos_d(g, low.vectors.col(t), exact.vectors.col(t))) >
          1.0 - 1e-8);
  }
}

TEST_CASE("partial-rank searches still produce a feasible orthonormal set") {
  Graph g = testsup::erdos_renyi_connected(60, 0.15, 0.2, 1.0, 121);
  SeedVector seed = embed_seed(g, {{10, 1.0}});
  SolverConfig cfg;
  cfg.k = 2;
  cfg.kappa = {0.4, 0.2};
  NystromModel model = build_nystrom(g, 25, 31);
  SsEigenSolution sol = solve_nystrom(g, model, seed, cfg);
  Eigen::MatrixXd gram =
      sol.vectors.transpose() * g.degrees().asDiagonal() * sol.vectors;
  CHECK((gram - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);
  for (double c : sol.correlations) {
    CHECK(c >= 0.0);
    CHECK(c <= 1.0 + 1e-9);
  }
}

TEST_CASE("landmark counts are validated") {
  Graph g = testsup::erdos_renyi_connected(15, 0.3, 0.2, 1.0, 131);
  CHECK_THROWS_AS(build_nystrom(g, 0, 1), invalid_argument);
  CHECK_THROWS_AS(build_nystrom(g, 16, 1), invalid_argument);
}
