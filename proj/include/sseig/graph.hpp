#ifndef SSEIG_GRAPH_HPP
#define SSEIG_GRAPH_HPP

#include <Eigen/Sparse>
#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace sseig {

struct Edge {
  Eigen::Index u;
  Eigen::Index v;
  double w;
};

// Undirected weighted graph, immutable after construction. The adjacency is
// stored fully symmetric in CSR form; degrees are the row sums.
class Graph {
 public:
  Graph() = default;

  // Builds a graph on n nodes. Duplicate (u,v) entries accumulate by
  // addition; every edge is stored in both triangles. Edge weights must be
  // strictly positive and self-loops are rejected unless allow_self_loops.
  static Graph from_edges(Eigen::Index n, const std::vector<Edge>& edges,
                          bool allow_self_loops = false);

  Eigen::Index node_count() const { return degrees_.size(); }
  Eigen::Index edge_count() const { return edge_count_; }

  const Eigen::SparseMatrix<double, Eigen::RowMajor>& adjacency() const { return adj_; }
  const Eigen::VectorXd& degrees() const { return degrees_; }
  const Eigen::VectorXd& sqrt_degrees() const { return sqrt_deg_; }
  const Eigen::VectorXd& inv_sqrt_degrees() const { return inv_sqrt_deg_; }
  double volume() const { return volume_; }
  bool connected() const { return connected_; }

  Eigen::VectorXd apply_adjacency(const Eigen::VectorXd& x) const;
  // (D - A) x
  Eigen::VectorXd apply_laplacian(const Eigen::VectorXd& x) const;
  // D^{-1/2} A D^{-1/2} x
  Eigen::VectorXd apply_normalized_adjacency(const Eigen::VectorXd& x) const;

  // Degree-weighted inner product x^T D y and the induced norm.
  double dot_d(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double norm_d(const Eigen::VectorXd& x) const;

  // Edges with u < v (self-loops as u == v), sorted lexicographically.
  std::vector<Edge> canonical_edges() const;

  // FNV-1a hash of the node count and canonical edge list; identifies the
  // graph in manifests and serialized models.
  std::uint64_t digest() const;

 private:
  Eigen::SparseMatrix<double, Eigen::RowMajor> adj_;
  Eigen::VectorXd degrees_;
  Eigen::VectorXd sqrt_deg_;
  Eigen::VectorXd inv_sqrt_deg_;
  double volume_ = 0.0;
  Eigen::Index edge_count_ = 0;
  bool connected_ = false;
};

}  // namespace sseig

#endif
