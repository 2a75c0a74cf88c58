#include "sseig/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "sseig/errors.hpp"

namespace sseig {

namespace {

int worker_count(Eigen::Index jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("SSEIG_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
  }
  return static_cast<int>(std::min<Eigen::Index>(hw, std::max<Eigen::Index>(jobs, 1)));
}

}  // namespace

Graph generate_ring_lattice(Eigen::Index n, int z, double p, std::uint64_t rng_seed,
                            RewireStats* stats) {
  if (n < 3) throw invalid_argument("ring lattice needs at least 3 nodes");
  if (z < 2 || z % 2 != 0) throw invalid_argument("ring lattice degree z must be even and >= 2");
  if (z >= n) throw invalid_argument("ring lattice degree z must be smaller than n");
  if (p < 0.0 || p > 1.0) throw invalid_argument("rewiring probability must lie in [0,1]");

  std::vector<std::pair<Eigen::Index, Eigen::Index>> ring_edges;
  ring_edges.reserve(static_cast<std::size_t>(n) * (z / 2));
  std::vector<std::unordered_set<Eigen::Index>> nbrs(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int m = 1; m <= z / 2; ++m) {
      Eigen::Index j = (i + m) % n;
      ring_edges.emplace_back(i, j);
      nbrs[i].insert(j);
      nbrs[j].insert(i);
    }
  }

  RewireStats local;
  if (p > 0.0) {
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    const int max_retries = 64;
    for (auto& [u, v] : ring_edges) {
      if (coin(rng) >= p) continue;
      Eigen::Index t = -1;
      for (int attempt = 0; attempt < max_retries; ++attempt) {
        Eigen::Index cand = pick(rng);
        if (cand == u || nbrs[u].count(cand)) continue;
        t = cand;
        break;
      }
      if (t < 0) {
        ++local.skipped;
        continue;
      }
      nbrs[u].erase(v);
      nbrs[v].erase(u);
      nbrs[u].insert(t);
      nbrs[t].insert(u);
      v = t;
      ++local.rewired;
    }
  }
  if (stats) *stats = local;

  std::vector<Edge> edges;
  edges.reserve(ring_edges.size());
  for (const auto& [u, v] : ring_edges) edges.push_back({u, v, 1.0});
  return Graph::from_edges(n, edges);
}

Graph generate_grid(Eigen::Index rows, Eigen::Index cols) {
  if (rows < 1 || cols < 1) throw invalid_argument("grid dimensions must be positive");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(2 * rows * cols));
  auto id = [cols](Eigen::Index r, Eigen::Index c) { return r * cols + c; };
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), 1.0});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), 1.0});
    }
  return Graph::from_edges(rows * cols, edges);
}

Graph build_knn_graph(const Eigen::MatrixXd& points, int k) {
  const Eigen::Index n = points.rows();
  if (n < 2) throw invalid_argument("knn graph needs at least 2 points");
  if (k < 1 || k >= n) throw invalid_argument("knn neighbor count must satisfy 1 <= k < n");

  struct Row {
    double sigma_sq = 0.0;
    Eigen::Index nearest = -1;
    std::vector<Eigen::Index> nbrs;
    std::vector<double> dist_sq;
  };
  std::vector<Row> rows(static_cast<std::size_t>(n));

  auto scan = [&](Eigen::Index lo, Eigen::Index hi) {
    std::vector<std::pair<double, Eigen::Index>> cand;
    for (Eigen::Index i = lo; i < hi; ++i) {
      cand.clear();
      cand.reserve(static_cast<std::size_t>(n - 1));
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        cand.emplace_back((points.row(i) - points.row(j)).squaredNorm(), j);
      }
      std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
      Row& row = rows[static_cast<std::size_t>(i)];
      row.sigma_sq = cand[0].first;
      row.nearest = cand[0].second;
      for (int t = 0; t < k; ++t) {
        row.nbrs.push_back(cand[static_cast<std::size_t>(t)].second);
        row.dist_sq.push_back(cand[static_cast<std::size_t>(t)].first);
      }
    }
  };

  int workers = worker_count(n);
  if (workers <= 1) {
    scan(0, n);
  } else {
    std::vector<std::thread> pool;
    Eigen::Index chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      Eigen::Index lo = w * chunk, hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back(scan, lo, hi);
    }
    for (auto& t : pool) t.join();
  }

  for (Eigen::Index i = 0; i < n; ++i)
    if (rows[static_cast<std::size_t>(i)].sigma_sq == 0.0)
      throw invalid_argument("duplicate points " + std::to_string(i) + " and " +
                             std::to_string(rows[static_cast<std::size_t>(i)].nearest) +
                             ": sigma vanishes");

  auto directed_weight = [&](Eigen::Index src, double dist_sq) {
    return std::exp(-4.0 * dist_sq / rows[static_cast<std::size_t>(src)].sigma_sq);
  };

  // Union of the two neighborhoods; symmetrize by taking the larger of the
  // two directed weights.
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Row& row = rows[static_cast<std::size_t>(i)];
    for (std::size_t t = 0; t < row.nbrs.size(); ++t) {
      Eigen::Index j = row.nbrs[t];
      Eigen::Index a = std::min(i, j), b = std::max(i, j);
      std::uint64_t key = static_cast<std::uint64_t>(a) << 32 | static_cast<std::uint64_t>(b);
      if (!seen.insert(key).second) continue;
      double w = std::max(directed_weight(i, row.dist_sq[t]), directed_weight(j, row.dist_sq[t]));
      edges.push_back({a, b, w});
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace sseig
