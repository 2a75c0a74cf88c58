#ifndef SSEIG_NYSTROM_HPP
#define SSEIG_NYSTROM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "sseig/graph.hpp"
#include "sseig/projection.hpp"
#include "sseig/seed.hpp"
#include "sseig/solver.hpp"

namespace sseig {

// Low-rank factorization V diag(lambda) V^T of the degree-normalized
// adjacency, built from a uniform landmark sample. V has orthonormal
// columns. When the sample covers the whole graph the factorization is the
// exact dense eigendecomposition, negative eigenvalues included; with a
// partial sample only the positive modes of the extension survive and the
// dropped spectral mass is recorded.
struct NystromModel {
  std::vector<Eigen::Index> sample_indices;  // sorted landmark node ids
  Eigen::MatrixXd V;                         // n x r, V^T V = I
  Eigen::VectorXd lambda;                    // r approximate eigenvalues
  std::uint64_t graph_digest = 0;            // graph the model was built for
  double discarded_mass = 0.0;               // |sum| of dropped eigenvalues
  std::vector<std::string> warnings;
};

NystromModel build_nystrom(const Graph& g, Eigen::Index m,
                           std::uint64_t rng_seed);

// Host byte order binary round trip with an integrity checksum. Loading
// rejects malformed or corrupted files.
void save_nystrom(const NystromModel& model, const std::string& path);
NystromModel load_nystrom(const std::string& path);

// First-vector solve against the trivial basis only, by the Woodbury form
// of the shifted inverse: the low-rank resolvent costs O(nr) per apply and
// here collapses to a single corrected matvec.
GammaSolve woodbury_leading_solve(const Graph& g, const NystromModel& model,
                                  const Eigen::VectorXd& seed_embedded,
                                  double gamma);

// General-step solve at shift gamma with the basis constraints enforced by
// block elimination of the saddle system (the hard-constraint limit of the
// quadratic penalty). Works for any step, including the first.
GammaSolve lagrangian_project_solve(const Graph& g, const NystromModel& model,
                                    const ProjectionBasis& basis,
                                    const Eigen::VectorXd& seed_embedded,
                                    double gamma);

// Feasible top of the shift interval under the low-rank model, from a small
// r x r eigenproblem. extremal is empty when the top of the restricted
// model spectrum is a flat null direction rather than a single mode.
UpperBound lowrank_upper_bound(const Graph& g, const NystromModel& model,
                               const ProjectionBasis& basis);

// Counterpart of solve() running entirely against the low-rank model:
// same bisection on the correlation target, bounds always recomputed (they
// are cheap here), every shift solved by lagrangian_project_solve.
SsEigenSolution solve_nystrom(const Graph& g, const NystromModel& model,
                              const SeedVector& seed, const SolverConfig& cfg);

}  // namespace sseig

#endif
