#include "sseig/seed.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sseig/errors.hpp"

namespace sseig {

Eigen::VectorXd SeedVector::raw(Eigen::Index n) const {
  Eigen::VectorXd s0 = Eigen::VectorXd::Zero(n);
  for (const auto& [node, w] : support) s0[node] = w;
  return s0;
}

SeedVector embed_seed(const Graph& g, std::vector<std::pair<Eigen::Index, double>> support) {
  const Eigen::Index n = g.node_count();
  if (support.empty()) throw invalid_argument("seed support is empty");
  std::sort(support.begin(), support.end());
  for (std::size_t i = 0; i < support.size(); ++i) {
    auto [node, w] = support[i];
    if (node < 0 || node >= n)
      throw invalid_argument("seed node " + std::to_string(node) + " out of range");
    if (i > 0 && support[i - 1].first == node)
      throw invalid_argument("seed node " + std::to_string(node) + " listed twice");
    if (!(w > 0.0) || !std::isfinite(w))
      throw invalid_argument("seed weight at node " + std::to_string(node) +
                             " must be positive and finite");
  }

  SeedVector seed;
  seed.support = std::move(support);
  Eigen::VectorXd s0 = seed.raw(n);

  Eigen::VectorXd v0 = g.sqrt_degrees() / std::sqrt(g.volume());
  Eigen::VectorXd centered = s0 - v0 * v0.dot(s0);
  if (centered.norm() <= 1e-12 * s0.norm())
    throw numerical_error("degenerate seed: support is parallel to the trivial direction");

  Eigen::VectorXd s = g.inv_sqrt_degrees().cwiseProduct(centered);
  s /= g.norm_d(s);

  // Positive entry at the heaviest support node, lowest id on ties.
  Eigen::Index anchor = seed.support.front().first;
  for (const auto& [node, w] : seed.support)
    if (w > s0[anchor]) anchor = node;
  if (std::abs(s[anchor]) < 1e-14) {
    Eigen::Index biggest = 0;
    s.cwiseAbs().maxCoeff(&biggest);
    anchor = biggest;
  }
  if (s[anchor] < 0.0) s = -s;

  seed.embedded = std::move(s);
  return seed;
}

}  // namespace sseig
