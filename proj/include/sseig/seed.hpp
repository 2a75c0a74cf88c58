#ifndef SSEIG_SEED_HPP
#define SSEIG_SEED_HPP

#include <utility>
#include <vector>

#include "sseig/graph.hpp"

namespace sseig {

// A seed set with its embedded counterpart. `embedded` is the degree-weighted
// unit vector s with s^T D 1 = 0 that the solver correlates against; it is
// obtained from the raw support by projecting out the trivial direction in
// the half-degree scaling:
//   s  proportional to  D^{-1/2} (I - v0 v0^T) s0,   v0 = D^{1/2} 1 / sqrt(vol)
// The sign is fixed so the entry at the heaviest support node is positive.
struct SeedVector {
  std::vector<std::pair<Eigen::Index, double>> support;  // sorted by node id
  Eigen::VectorXd embedded;

  // Raw support densified to length n.
  Eigen::VectorXd raw(Eigen::Index n) const;
};

SeedVector embed_seed(const Graph& g,
                      std::vector<std::pair<Eigen::Index, double>> support);

}  // namespace sseig

#endif
