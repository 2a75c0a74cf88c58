#include "sseig/push.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <utility>

#include "sseig/errors.hpp"

namespace sseig {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

double gamma_to_alpha_prime(double gamma) {
  if (!(gamma < 0.0))
    throw invalid_argument(
        "gamma must be negative to correspond to a teleport");
  long double ge = gamma;
  return static_cast<double>(ge / (ge - 2.0L));
}

double alpha_prime_to_gamma(double alpha_prime) {
  if (!(alpha_prime > 0.0 && alpha_prime < 1.0))
    throw invalid_argument("alpha_prime must lie in (0, 1) to map to a shift");
  long double a = alpha_prime;
  return static_cast<double>(2.0L * a / (a - 1.0L));
}

double alpha_to_alpha_prime(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw invalid_argument("alpha must lie in (0, 1]");
  long double a = alpha;
  return static_cast<double>(a / (2.0L - a));
}

double alpha_prime_to_alpha(double alpha_prime) {
  if (!(alpha_prime > 0.0 && alpha_prime <= 1.0))
    throw invalid_argument("alpha_prime must lie in (0, 1]");
  long double a = alpha_prime;
  return static_cast<double>(2.0L * a / (1.0L + a));
}

PushState push_pagerank(const Graph& g, const Eigen::VectorXd& seed_mass,
                        const PushConfig& cfg) {
  const Eigen::Index n = g.node_count();
  if (seed_mass.size() != n)
    throw invalid_argument("push_pagerank: seed length does not match the graph");
  if (!(cfg.alpha_prime > 0.0 && cfg.alpha_prime <= 1.0))
    throw invalid_argument("push_pagerank: alpha_prime must lie in (0, 1]");
  if (!(cfg.epsilon > 0.0))
    throw invalid_argument("push_pagerank: epsilon must be positive");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(seed_mass[i] >= 0.0) || !std::isfinite(seed_mass[i]))
      throw invalid_argument("push_pagerank: seed mass must be nonnegative and finite");

  PushState st;
  st.p = Eigen::VectorXd::Zero(n);
  st.r = seed_mass;

  const Eigen::VectorXd& deg = g.degrees();
  std::deque<Eigen::Index> queue;
  std::vector<char> queued(n, 0);
  for (Eigen::Index u = 0; u < n; ++u) {
    if (st.r[u] >= cfg.epsilon * deg[u] && deg[u] > 0.0) {
      queue.push_back(u);
      queued[u] = 1;
    }
  }

  const double ap = cfg.alpha_prime;
  const auto& adj = g.adjacency();
  while (!queue.empty()) {
    Eigen::Index u = queue.front();
    queue.pop_front();
    queued[u] = 0;
    double ru = st.r[u];
    if (ru < cfg.epsilon * deg[u]) continue;  // stale entry

    if (cfg.max_pushes >= 0 && st.pushes >= cfg.max_pushes)
      throw numerical_error(
          "push_pagerank: push budget exhausted with residuals above the threshold");

    st.p[u] += ap * ru;
    double rem = (1.0 - ap) * ru;
    st.r[u] = 0.5 * rem;
    if (rem > 0.0) {
      double spread = 0.5 * rem / deg[u];
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(adj, u);
           it; ++it) {
        Eigen::Index v = it.col();
        st.r[v] += spread * it.value();
        if (!queued[v] && deg[v] > 0.0 && st.r[v] >= cfg.epsilon * deg[v]) {
          queue.push_back(v);
          queued[v] = 1;
        }
      }
    }
    if (!queued[u] && st.r[u] >= cfg.epsilon * deg[u]) {
      queue.push_back(u);
      queued[u] = 1;
    }
    ++st.pushes;
    if (cfg.on_push) cfg.on_push(st, u);
  }

  for (Eigen::Index i = 0; i < n; ++i)
    if (st.p[i] > 0.0 || st.r[i] > 0.0) ++st.touched;
  return st;
}

namespace {

// Shared worker: one push run turned into a deflated, D-normalized vector.
PushVector push_vector_alpha(const Graph& g, const ProjectionBasis& basis,
                             const SeedVector& seed, double alpha_prime,
                             double epsilon) {
  const Eigen::Index n = g.node_count();
  Eigen::VectorXd s0 = seed.raw(n);

  PushConfig pc;
  pc.alpha_prime = alpha_prime;
  pc.epsilon = epsilon;
  PushState st = push_pagerank(g, g.sqrt_degrees().cwiseProduct(s0), pc);

  // D^{-1} p minus the trivial-direction correction (v0^T s0 / sqrt(vol)) 1.
  double v0_dot = g.sqrt_degrees().dot(s0) / std::sqrt(g.volume());
  Eigen::VectorXd u = st.p.cwiseQuotient(g.degrees());
  u.array() -= v0_dot / std::sqrt(g.volume());

  double u_norm = g.norm_d(u);
  Eigen::VectorXd x = basis.apply_combinatorial(u);
  double x_norm = g.norm_d(x);
  if (!(x_norm > 1e-8 * u_norm) || !(x_norm > 0.0))
    throw numerical_error(
        "push vector collapsed under deflation; the shifts are too close to "
        "separate another vector");
  x /= x_norm;
  double corr = g.dot_d(x, seed.embedded);
  if (corr < 0.0) {
    x = -x;
    corr = -corr;
  }

  PushVector out;
  out.x = std::move(x);
  out.correlation = corr * corr;
  out.alpha_prime = alpha_prime;
  out.pushes = st.pushes;
  out.touched = st.touched;
  return out;
}

}  // namespace

PushVector push_leading(const Graph& g, const SeedVector& seed,
                        double alpha_prime, double epsilon) {
  if (!g.connected())
    throw invalid_argument("push_leading: graph must be connected");
  ProjectionBasis basis(g);
  return push_vector_alpha(g, basis, seed, alpha_prime, epsilon);
}

PushVector peel_next_vector(const Graph& g, const ProjectionBasis& basis,
                            const SeedVector& seed, double gamma,
                            double epsilon,
                            const std::vector<double>& prev_gammas,
                            double separation_floor) {
  double alpha_prime = gamma_to_alpha_prime(gamma);
  for (double gp : prev_gammas) {
    if (std::abs(gamma - gp) < separation_floor * std::abs(gamma))
      throw invalid_argument("shift " + format_double(gamma) +
                             " is too close to the earlier shift " +
                             format_double(gp) +
                             "; vectors cannot be separated by peeling");
  }
  return push_vector_alpha(g, basis, seed, alpha_prime, epsilon);
}

PushRunResult push_peel_run(const Graph& g, const SeedVector& seed,
                            const std::vector<double>& gammas, double epsilon,
                            double separation_floor) {
  auto t0 = std::chrono::steady_clock::now();
  if (!g.connected())
    throw invalid_argument("push_peel_run: graph must be connected");
  if (gammas.empty())
    throw invalid_argument("push_peel_run: need at least one gamma");
  const Eigen::Index n = g.node_count();
  if (static_cast<Eigen::Index>(gammas.size()) > n - 1)
    throw invalid_argument("push_peel_run: more shifts than free directions");

  PushRunResult out;
  out.vectors.resize(n, static_cast<Eigen::Index>(gammas.size()));
  ProjectionBasis basis(g);
  std::vector<double> prev;
  for (std::size_t t = 0; t < gammas.size(); ++t) {
    PushVector pv =
        peel_next_vector(g, basis, seed, gammas[t], epsilon, prev, separation_floor);
    out.vectors.col(static_cast<Eigen::Index>(t)) = pv.x;
    out.gammas.push_back(gammas[t]);
    out.alpha_primes.push_back(pv.alpha_prime);
    out.correlations.push_back(pv.correlation);
    out.pushes.push_back(pv.pushes);
    out.touched.push_back(pv.touched);
    basis.append(pv.x);
    prev.push_back(gammas[t]);
  }
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

std::vector<ProfileRow> correlation_decay_profile(
    const Graph& g, const SeedVector& seed, const std::vector<double>& alphas,
    const std::vector<double>& epsilons) {
  if (alphas.empty() || epsilons.empty())
    throw invalid_argument(
        "correlation_decay_profile: need at least one alpha and one epsilon");
  std::vector<ProfileRow> rows;
  for (double alpha : alphas) {
    double ap = alpha_to_alpha_prime(alpha);
    for (double eps : epsilons) {
      auto t0 = std::chrono::steady_clock::now();
      PushVector pv = push_leading(g, seed, ap, eps);
      ProfileRow row;
      row.alpha = alpha;
      row.epsilon = eps;
      row.correlation = pv.correlation;
      row.touched = pv.touched;
      row.pushes = pv.pushes;
      row.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace sseig
