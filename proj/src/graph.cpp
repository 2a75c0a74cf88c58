#include "sseig/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "sseig/errors.hpp"

namespace sseig {

Graph Graph::from_edges(Eigen::Index n, const std::vector<Edge>& edges,
                        bool allow_self_loops) {
  if (n < 0) throw invalid_argument("node count must be nonnegative");
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * edges.size());
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             ") out of range for " + std::to_string(n) + " nodes");
    if (e.u == e.v && !allow_self_loops)
      throw invalid_argument("self-loop at node " + std::to_string(e.u));
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             ") has non-positive or non-finite weight");
    trips.emplace_back(e.u, e.v, e.w);
    if (e.u != e.v) trips.emplace_back(e.v, e.u, e.w);
  }

  Graph g;
  g.adj_.resize(n, n);
  g.adj_.setFromTriplets(trips.begin(), trips.end());
  g.adj_.makeCompressed();

  g.degrees_ = g.adj_ * Eigen::VectorXd::Ones(n);
  g.volume_ = g.degrees_.sum();
  g.sqrt_deg_ = g.degrees_.cwiseSqrt();
  g.inv_sqrt_deg_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    g.inv_sqrt_deg_[i] = g.degrees_[i] > 0.0 ? 1.0 / g.sqrt_deg_[i] : 0.0;

  Eigen::Index nnz_diag = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (g.adj_.coeff(i, i) != 0.0) ++nnz_diag;
  g.edge_count_ = (g.adj_.nonZeros() - nnz_diag) / 2 + nnz_diag;

  // BFS connectivity; the empty graph and a single node count as connected.
  g.connected_ = true;
  if (n > 1) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::queue<Eigen::Index> q;
    q.push(0);
    seen[0] = 1;
    Eigen::Index reached = 1;
    while (!q.empty()) {
      Eigen::Index u = q.front();
      q.pop();
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(g.adj_, u); it; ++it) {
        if (!seen[it.col()]) {
          seen[it.col()] = 1;
          ++reached;
          q.push(it.col());
        }
      }
    }
    g.connected_ = reached == n;
  }
  return g;
}

Eigen::VectorXd Graph::apply_adjacency(const Eigen::VectorXd& x) const {
  return adj_ * x;
}

Eigen::VectorXd Graph::apply_laplacian(const Eigen::VectorXd& x) const {
  return degrees_.cwiseProduct(x) - adj_ * x;
}

Eigen::VectorXd Graph::apply_normalized_adjacency(const Eigen::VectorXd& x) const {
  return inv_sqrt_deg_.cwiseProduct(adj_ * inv_sqrt_deg_.cwiseProduct(x));
}

double Graph::dot_d(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  return x.dot(degrees_.cwiseProduct(y));
}

double Graph::norm_d(const Eigen::VectorXd& x) const {
  return std::sqrt(std::max(0.0, dot_d(x, x)));
}

std::vector<Edge> Graph::canonical_edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (Eigen::Index i = 0; i < adj_.outerSize(); ++i)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(adj_, i); it; ++it)
      if (i <= it.col()) out.push_back({i, it.col(), it.value()});
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return out;
}

std::uint64_t Graph::digest() const {
  const std::uint64_t prime = 1099511628211ULL;
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&](const void* data, std::size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= prime;
    }
  };
  std::int64_t n = node_count();
  mix(&n, sizeof n);
  for (const Edge& e : canonical_edges()) {
    std::int64_t u = e.u, v = e.v;
    mix(&u, sizeof u);
    mix(&v, sizeof v);
    mix(&e.w, sizeof e.w);
  }
  return h;
}

}  // namespace sseig
