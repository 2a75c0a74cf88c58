#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "sseig/graph.hpp"

namespace sseig {

struct LemmaCheck {
  std::string name;
  double observed = 0.0;   // measured defect for this identity
  double threshold = 0.0;  // pass when observed <= threshold
  bool passed = false;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  bool all_passed() const;
};

// Random connected weighted graph: random spanning tree plus extra edges.
// Weights are uniform in [0.5, 1.5]; deterministic for a fixed seed.
Graph random_connected_graph(int n, double extra_edge_prob, std::uint64_t rng_seed);

// Numerically exercises the linear-algebra identities the solver relies on:
// the penalty-limit form of the constrained pseudoinverse, eigenvalue
// interlacing under rank-one updates, the correlation budget of an
// orthonormal family against a unit seed, and the resolvent identity
// linking projected pseudoinverses at two shifts.
LemmaReport lemma_identities_check(int size, std::uint64_t rng_seed);

}  // namespace sseig
