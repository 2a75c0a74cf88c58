#include "sseig/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sseig/dense_oracle.hpp"
#include "sseig/errors.hpp"
#include "sseig/seed.hpp"

namespace sseig {

bool LemmaReport::all_passed() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

Graph random_connected_graph(int n, double extra_edge_prob, std::uint64_t rng_seed) {
  if (n < 2) throw invalid_argument("random_connected_graph needs n >= 2");
  if (extra_edge_prob < 0.0 || extra_edge_prob > 1.0)
    throw invalid_argument("random_connected_graph: extra_edge_prob must lie in [0, 1]");
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    edges.push_back({parent(rng), v, weight(rng)});
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < extra_edge_prob) edges.push_back({u, v, weight(rng)});
  return Graph::from_edges(n, edges);
}

namespace {

Eigen::MatrixXd gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = gauss(rng);
  return m;
}

// Penalizing a direction with a huge quadratic term converges to pinning the
// pseudoinverse onto the orthogonal complement of that direction.
LemmaCheck check_penalty_limit(int n, std::mt19937_64& rng) {
  Eigen::MatrixXd b = gaussian_matrix(n, n, rng);
  Eigen::MatrixXd m =
      b * b.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd x = gaussian_matrix(n, 1, rng);
  x.normalize();

  const double omega = 1e10;
  Eigen::MatrixXd penalized = m + omega * (x * x.transpose());
  Eigen::MatrixXd lhs = dense_pseudo_inverse(penalized);
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n) - x * x.transpose();
  Eigen::MatrixXd rhs = dense_pseudo_inverse(p * m * p);

  double defect = (lhs - rhs).norm() / std::max(1.0, rhs.norm());
  return {"penalty_limit", defect, 1e-4, defect <= 1e-4};
}

// Adding a positive semidefinite rank-one term moves every eigenvalue up,
// but never past the next one of the original matrix.
LemmaCheck check_rank_one_interlacing(int n, std::mt19937_64& rng) {
  Eigen::MatrixXd raw = gaussian_matrix(n, n, rng);
  Eigen::MatrixXd a = 0.5 * (raw + raw.transpose());
  Eigen::VectorXd c = gaussian_matrix(n, 1, rng);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_a(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_b(a + c * c.transpose());
  const Eigen::VectorXd& la = es_a.eigenvalues();
  const Eigen::VectorXd& lb = es_b.eigenvalues();

  double scale = std::max(1.0, std::max(la.cwiseAbs().maxCoeff(),
                                        lb.cwiseAbs().maxCoeff()));
  double violation = 0.0;
  for (int k = 0; k < n; ++k) {
    violation = std::max(violation, la[k] - lb[k]);
    if (k + 1 < n) violation = std::max(violation, lb[k] - la[k + 1]);
  }
  double defect = std::max(0.0, violation) / scale;
  return {"rank_one_interlacing", defect, 1e-10, defect <= 1e-10};
}

// Squared degree-weighted correlations of an orthonormal family against a
// unit seed sum to at most one, with equality for the complete basis.
LemmaCheck check_correlation_budget(const Graph& g, std::mt19937_64& rng) {
  const int n = static_cast<int>(g.node_count());
  std::uniform_int_distribution<int> pick(0, n - 1);
  int a = pick(rng);
  int b = pick(rng);
  while (b == a) b = pick(rng);
  SeedVector seed = embed_seed(g, {{a, 1.0}, {b, 1.0}});

  GeneralizedEigenPairs pairs = dense_generalized_eigenpairs(g);
  double partial = 0.0;
  double full = 0.0;
  for (Eigen::Index j = 0; j < pairs.vectors.cols(); ++j) {
    double corr = g.dot_d(pairs.vectors.col(j), seed.embedded);
    full += corr * corr;
    if (j >= 1 && j <= 3) partial += corr * corr;
  }
  double defect = std::max(std::max(0.0, partial - 1.0), std::abs(full - 1.0));
  return {"correlation_budget", defect, 1e-10, defect <= 1e-10};
}

// Resolvent identity for the projected pencil in whitened coordinates:
// pinv at shift gamma minus pinv at shift gamma_hat equals their product
// scaled by the shift gap.
LemmaCheck check_resolvent(const Graph& g) {
  const Eigen::Index n = g.node_count();
  Eigen::VectorXd v0 = g.sqrt_degrees() / std::sqrt(g.volume());
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n) - v0 * v0.transpose();
  Eigen::MatrixXd lap = dense_laplacian(g);
  Eigen::MatrixXd norm_lap = g.inv_sqrt_degrees().asDiagonal() * lap *
                             g.inv_sqrt_degrees().asDiagonal();

  const double gamma = -0.7;
  const double gamma_hat = -0.2;
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd pg = dense_pseudo_inverse(q * (norm_lap - gamma * id) * q);
  Eigen::MatrixXd ph = dense_pseudo_inverse(q * (norm_lap - gamma_hat * id) * q);

  Eigen::MatrixXd lhs = pg - ph;
  Eigen::MatrixXd rhs = (gamma - gamma_hat) * ph * pg;
  double defect = (lhs - rhs).norm() / std::max(1.0, rhs.norm());
  return {"resolvent_identity", defect, 1e-8, defect <= 1e-8};
}

}  // namespace

LemmaReport lemma_identities_check(int size, std::uint64_t rng_seed) {
  if (size < 4) throw invalid_argument("lemma_identities_check needs size >= 4");
  if (size > static_cast<int>(kDenseOracleMaxNodes))
    throw invalid_argument("lemma_identities_check: size exceeds dense oracle limit");
  std::mt19937_64 rng(rng_seed);
  LemmaReport rep;
  rep.checks.push_back(check_penalty_limit(size, rng));
  rep.checks.push_back(check_rank_one_interlacing(size, rng));
  Graph g = random_connected_graph(size, 0.15, rng());
  rep.checks.push_back(check_correlation_budget(g, rng));
  rep.checks.push_back(check_resolvent(g));
  return rep;
}

}  // namespace sseig
