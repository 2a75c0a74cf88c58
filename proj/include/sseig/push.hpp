#ifndef SSEIG_PUSH_HPP
#define SSEIG_PUSH_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "sseig/graph.hpp"
#include "sseig/projection.hpp"
#include "sseig/seed.hpp"

namespace sseig {

// Conversions between the shift gamma, the lazy-walk teleport alpha', and
// the plain-walk teleport alpha. Evaluated in extended precision so the
// round trips are bit-exact in double:
//   alpha' = gamma / (gamma - 2)        gamma = 2 alpha' / (alpha' - 1)
//   alpha' = alpha / (2 - alpha)        alpha = 2 alpha' / (1 + alpha')
double gamma_to_alpha_prime(double gamma);        // gamma < 0
double alpha_prime_to_gamma(double alpha_prime);  // alpha' in (0, 1)
double alpha_to_alpha_prime(double alpha);        // alpha  in (0, 1]
double alpha_prime_to_alpha(double alpha_prime);  // alpha' in (0, 1]

struct PushState {
  Eigen::VectorXd p;      // accumulated mass
  Eigen::VectorXd r;      // residual
  long long pushes = 0;
  Eigen::Index touched = 0;  // nodes holding any mass at the end
};

struct PushConfig {
  double alpha_prime = 0.1;  // lazy teleport, (0, 1]
  double epsilon = 1e-6;     // push while some r(u) >= epsilon * d(u)
  long long max_pushes = -1;  // negative: unlimited
  // Called after every push with the current state and the pushed node.
  std::function<void(const PushState&, Eigen::Index)> on_push;
};

// Approximate personalized PageRank on the lazy walk W = (I + A D^{-1}) / 2
// by residual pushing. One push at u moves alpha' r(u) into p(u), keeps
// (1-alpha') r(u) / 2 at u and spreads the other half over the neighbors in
// proportion to edge weight. Work proceeds through a FIFO queue seeded in
// ascending node order, and stops when every residual is below epsilon d(u).
// The exact vector p + pr(alpha', r) = pr(alpha', seed_mass) is invariant
// across pushes. alpha' = 1 returns the seed itself.
PushState push_pagerank(const Graph& g, const Eigen::VectorXd& seed_mass,
                        const PushConfig& cfg);

struct PushVector {
  Eigen::VectorXd x;          // D-normalized, projected against the basis
  double correlation = 0.0;   // (x^T D s)^2 against the embedded seed
  double alpha_prime = 0.0;
  long long pushes = 0;
  Eigen::Index touched = 0;
};

// Leading vector by a single push run against the trivial basis, entered by
// the teleport directly so alpha' = 1 stays reachable.
PushVector push_leading(const Graph& g, const SeedVector& seed,
                        double alpha_prime, double epsilon);

// Next vector at shift gamma: one push run, the trivial-direction correction
// subtracted, then the accepted basis deflated away. Successive shifts must
// stay separated (relative floor on |gamma - previous|), and the projection
// must keep a nontrivial residual, otherwise the peel is ill-posed.
PushVector peel_next_vector(const Graph& g, const ProjectionBasis& basis,
                            const SeedVector& seed, double gamma,
                            double epsilon,
                            const std::vector<double>& prev_gammas,
                            double separation_floor = 1e-3);

struct PushRunResult {
  Eigen::MatrixXd vectors;  // n x k, D-orthonormal columns
  std::vector<double> gammas;
  std::vector<double> alpha_primes;
  std::vector<double> correlations;
  std::vector<long long> pushes;
  std::vector<Eigen::Index> touched;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
};

// Full diffusion-only run over caller-chosen shifts, one vector per shift.
PushRunResult push_peel_run(const Graph& g, const SeedVector& seed,
                            const std::vector<double>& gammas, double epsilon,
                            double separation_floor = 1e-3);

struct ProfileRow {
  double alpha = 0.0;
  double epsilon = 0.0;
  double correlation = 0.0;
  Eigen::Index touched = 0;
  double seconds = 0.0;
  long long pushes = 0;
};

// Leading-vector sweep over teleports and push thresholds: how the seed
// correlation, the touched set, and the cost move as the diffusion gets
// cheaper.
std::vector<ProfileRow> correlation_decay_profile(
    const Graph& g, const SeedVector& seed, const std::vector<double>& alphas,
    const std::vector<double>& epsilons);

}  // namespace sseig

#endif
