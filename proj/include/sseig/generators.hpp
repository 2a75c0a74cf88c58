#ifndef SSEIG_GENERATORS_HPP
#define SSEIG_GENERATORS_HPP

#include <cstdint>

#include "sseig/graph.hpp"

namespace sseig {

struct RewireStats {
  Eigen::Index rewired = 0;
  // Rewire attempts abandoned after the bounded retry budget; the original
  // lattice edge is kept for these.
  Eigen::Index skipped = 0;
};

// Watts-Strogatz ring lattice: n nodes, z/2 neighbors on each side (z even),
// every lattice edge independently rewired with probability p by redrawing
// its far endpoint. Unit weights; the edge count is exactly n*z/2.
Graph generate_ring_lattice(Eigen::Index n, int z, double p, std::uint64_t rng_seed,
                            RewireStats* stats = nullptr);

// rows x cols 4-neighbor grid with unit weights.
Graph generate_grid(Eigen::Index rows, Eigen::Index cols);

// Symmetrized k-nearest-neighbor graph over point rows. The directed weight
// from i is exp(-4 ||x_i - x_j||^2 / sigma_i^2) with sigma_i the distance to
// i's nearest neighbor; an edge kept by either endpoint gets the larger of
// the two directed weights. Duplicate points are rejected since sigma would
// vanish. Honors SSEIG_THREADS for the distance scan.
Graph build_knn_graph(const Eigen::MatrixXd& points, int k);

}  // namespace sseig

#endif
