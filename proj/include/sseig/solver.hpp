#ifndef SSEIG_SOLVER_HPP
#define SSEIG_SOLVER_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "sseig/graph.hpp"
#include "sseig/projection.hpp"
#include "sseig/seed.hpp"

namespace sseig {

struct SolverConfig {
  int k = 1;                  // number of vectors
  std::vector<double> kappa;  // target squared seed correlation per vector
  double epsilon = 1e-4;      // tolerance on correlation and bracket motion
  int max_bisections = 60;
  double cg_tol = 1e-8;
  int cg_max_iter = -1;   // -1: 10 * n
  double lanczos_tol = 1e-10;
  int lanczos_max_iter = 5000;
  bool eager_bounds = false;  // recompute the feasible upper bound every step
  std::uint64_t rng_seed = 12345;
};

// One projected shifted solve. x solves the degree-projected system
//   P (L - gamma D) P x = P D s,   P = I - D X (X^T D^2 X)^{-1} X^T D
// D-normalized with nonnegative seed correlation.
struct GammaSolve {
  Eigen::VectorXd x;
  double correlation = 0.0;  // (x^T D s)^2
  int cg_iterations = 0;
};

GammaSolve solve_at_gamma(const Graph& g, const ProjectionBasis& basis,
                          const Eigen::VectorXd& seed_embedded, double gamma,
                          double cg_tol = 1e-8, int cg_max_iter = -1);

// Smallest eigenvalue of the pencil (L, D) restricted to the degree-
// orthogonal complement of the basis, with its eigenvector. This is the
// supremum of feasible shifts: the projected system stays positive definite
// for gamma below it. Computed as 1 - lambda_max of the projected normalized
// adjacency, with the Krylov space pinned inside the complement.
struct UpperBound {
  double gamma_top = 0.0;
  Eigen::VectorXd extremal;  // eigenvector, D-normalized
  int iterations = 0;        // Lanczos steps spent
};

UpperBound compute_upper_bound(const Graph& g, const ProjectionBasis& basis,
                               double lanczos_tol = 1e-10,
                               int lanczos_max_iter = 5000,
                               std::uint64_t rng_seed = 12345);

struct StepDiagnostics {
  int bisections = 0;
  int cg_iterations = 0;      // summed over the bisection
  int lanczos_iterations = 0; // spent on bound computations
  bool bound_recomputed = false;  // lazy bound was refreshed mid-step
  bool saturated = false;         // search pinned at an end of the interval
  std::string warning;            // empty when the step was clean
};

struct SsEigenSolution {
  Eigen::MatrixXd vectors;  // n x k, D-orthonormal columns
  std::vector<double> gammas;
  std::vector<double> correlations;  // (x_t^T D s)^2
  std::vector<double> upper_bounds;  // feasible top per step (NaN if skipped)
  std::vector<StepDiagnostics> diagnostics;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
};

// Computes cfg.k successive vectors. Each step binary-searches the shift
// gamma in (-vol(G), gamma_top) for the squared seed correlation kappa_t;
// correlation is continuous and nonincreasing in gamma, so the bracket
// update is: correlation above kappa raises the lower end, below kappa
// lowers the upper end. A search that pins at the top returns the restricted
// pencil eigenvector itself (the gamma -> gamma_top limit of the solves);
// one that pins at the bottom returns the highest correlation attained,
// flags the step saturated and records a warning. By default the upper
// bound is reused from the previous step (it can only move up as the basis
// grows) and recomputed once if the stale value pins the search at the top.
SsEigenSolution solve(const Graph& g, const SeedVector& seed,
                      const SolverConfig& cfg);

// Skips the search and solves at caller-chosen shifts, one per vector, still
// deflating each accepted vector from the next step. kappa is ignored.
SsEigenSolution solve_fixed_gammas(const Graph& g, const SeedVector& seed,
                                   const std::vector<double>& gammas,
                                   const SolverConfig& cfg);

// Correlation as a function of gamma for the first step (trivial basis
// only). Nonincreasing in gamma: the supremum sits toward -vol(G) and the
// infimum at the feasible top, where the solve degenerates to the pencil
// eigenvector. Shifts at or above the top get NaN and a notice; shifts at or
// below -vol(G) are evaluated but noted as outside the nominal interval.
struct CurvePoint {
  double gamma = 0.0;
  double correlation = 0.0;
};

struct CorrelationCurve {
  std::vector<CurvePoint> points;
  std::vector<std::string> notices;
};

CorrelationCurve correlation_curve(const Graph& g, const SeedVector& seed,
                                   const std::vector<double>& gammas,
                                   const SolverConfig& cfg);

}  // namespace sseig

#endif
