#include "sseig/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <utility>

#include "sseig/cg.hpp"
#include "sseig/detail/bisection.hpp"
#include "sseig/errors.hpp"
#include "sseig/lanczos.hpp"
#include "sseig/linear_operator.hpp"

namespace sseig {

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void validate_common(const Graph& g, const SeedVector& seed, const char* who) {
  if (!g.connected())
    throw invalid_argument(std::string(who) + ": graph must be connected");
  if (seed.embedded.size() != g.node_count())
    throw invalid_argument(std::string(who) + ": seed does not match the graph");
}

}  // namespace

GammaSolve solve_at_gamma(const Graph& g, const ProjectionBasis& basis,
                          const Eigen::VectorXd& seed_embedded, double gamma,
                          double cg_tol, int cg_max_iter) {
  const Eigen::Index n = g.node_count();
  if (seed_embedded.size() != n)
    throw invalid_argument("solve_at_gamma: seed length does not match the graph");
  if (!std::isfinite(gamma))
    throw invalid_argument("solve_at_gamma: gamma must be finite");

  LinearOperator op(n, true, [&](const Eigen::VectorXd& z) {
    Eigen::VectorXd pz = basis.apply_combinatorial(z);
    Eigen::VectorXd w =
        g.apply_laplacian(pz) - gamma * g.degrees().cwiseProduct(pz);
    return basis.apply_combinatorial(w);
  });
  Eigen::VectorXd rhs =
      basis.apply_combinatorial(g.degrees().cwiseProduct(seed_embedded));

  CgResult cg = cg_solve(op, rhs, cg_tol, cg_max_iter);
  Eigen::VectorXd x = basis.apply_combinatorial(cg.x);
  double norm = g.norm_d(x);
  if (!(norm > 1e-300))
    throw numerical_error("solve_at_gamma: projected solution vanished");
  x /= norm;
  double corr = g.dot_d(x, seed_embedded);
  if (corr < 0.0) {
    x = -x;
    corr = -corr;
  }
  return {std::move(x), corr * corr, cg.iterations};
}

UpperBound compute_upper_bound(const Graph& g, const ProjectionBasis& basis,
                               double lanczos_tol, int lanczos_max_iter,
                               std::uint64_t rng_seed) {
  const Eigen::Index n = g.node_count();
  if (basis.count() >= n)
    throw invalid_argument(
        "compute_upper_bound: basis already spans the whole space");
  const Eigen::MatrixXd& y = basis.normalized();
  LinearOperator op(n, true, [&](const Eigen::VectorXd& z) {
    Eigen::VectorXd qz = basis.apply_normalized(z);
    Eigen::VectorXd w = g.apply_normalized_adjacency(qz);
    return basis.apply_normalized(w);
  });
  LanczosResult lr = largest_algebraic_eigenvalue(op, lanczos_tol,
                                                  lanczos_max_iter, rng_seed, &y);

  UpperBound out;
  out.gamma_top = 1.0 - lr.value;
  out.iterations = lr.iterations;
  Eigen::VectorXd x = g.inv_sqrt_degrees().cwiseProduct(lr.vector);
  double norm = g.norm_d(x);
  if (!(norm > 0.0))
    throw numerical_error("compute_upper_bound: extremal vector vanished");
  out.extremal = x / norm;
  return out;
}

namespace {

// The shift -> top limit of the solves, as a selection candidate: the
// restricted pencil eigenvector with the sign fixed against the seed.
detail::Candidate limit_candidate(const Graph& g, const UpperBound& bound,
                                  const Eigen::VectorXd& s) {
  detail::Candidate cand;
  cand.x = bound.extremal;
  double c0 = g.dot_d(cand.x, s);
  if (c0 < 0.0) {
    cand.x = -cand.x;
    c0 = -c0;
  }
  cand.gamma = bound.gamma_top;
  cand.correlation = c0 * c0;
  return cand;
}

}  // namespace

SsEigenSolution solve(const Graph& g, const SeedVector& seed,
                      const SolverConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  const Eigen::Index n = g.node_count();
  validate_common(g, seed, "solve");
  if (cfg.k < 1) throw invalid_argument("solve: k must be at least 1");
  if (cfg.k > n - 1)
    throw invalid_argument("solve: k must leave room outside the trivial direction");
  if (static_cast<int>(cfg.kappa.size()) != cfg.k)
    throw invalid_argument("solve: kappa must list one target per vector");
  double kappa_sum = 0.0;
  for (double kap : cfg.kappa) {
    if (!(kap >= 0.0 && kap <= 1.0))
      throw invalid_argument("solve: each kappa must lie in [0, 1]");
    kappa_sum += kap;
  }
  if (kappa_sum > 1.0 + 1e-12)
    throw invalid_argument("solve: kappa targets sum beyond the unit budget");
  if (!(cfg.epsilon > 0.0))
    throw invalid_argument("solve: epsilon must be positive");
  if (cfg.max_bisections < 1)
    throw invalid_argument("solve: max_bisections must be positive");

  SsEigenSolution out;
  out.vectors.resize(n, cfg.k);
  ProjectionBasis basis(g);

  auto solve_shift = [&](double gamma) {
    return solve_at_gamma(g, basis, seed.embedded, gamma, cfg.cg_tol,
                          cfg.cg_max_iter);
  };

  std::optional<UpperBound> bound;
  bool bound_fresh = false;  // computed against the current basis

  for (int t = 0; t < cfg.k; ++t) {
    StepDiagnostics diag;
    const double kappa = cfg.kappa[t];

    if (!bound || cfg.eager_bounds) {
      bound = compute_upper_bound(g, basis, cfg.lanczos_tol,
                                  cfg.lanczos_max_iter, cfg.rng_seed);
      diag.lanczos_iterations += bound->iterations;
      bound_fresh = true;
    }

    detail::SearchResult sr =
        detail::run_bisection(-g.volume(), bound->gamma_top, kappa, cfg.epsilon,
                              cfg.max_bisections, solve_shift);
    diag.bisections += sr.bisections;
    diag.cg_iterations += sr.solver_iterations;
    int failures = sr.failures;

    // Pinned at the top with a stale bound: the interval may simply have
    // been too short. Refresh the bound once and search the widened part.
    if (detail::top_pinned(sr) && !bound_fresh) {
      double old_top = bound->gamma_top;
      bound = compute_upper_bound(g, basis, cfg.lanczos_tol,
                                  cfg.lanczos_max_iter, cfg.rng_seed);
      diag.lanczos_iterations += bound->iterations;
      diag.bound_recomputed = true;
      bound_fresh = true;
      if (bound->gamma_top >
          old_top + 1e-12 * std::max(1.0, std::abs(old_top))) {
        detail::SearchResult retry =
            detail::run_bisection(-g.volume(), bound->gamma_top, kappa,
                                  cfg.epsilon, cfg.max_bisections, solve_shift);
        diag.bisections += retry.bisections;
        diag.cg_iterations += retry.solver_iterations;
        failures += retry.failures;
        sr = std::move(retry);
      }
    }

    detail::Candidate top_limit;
    const detail::Candidate* top_ptr = nullptr;
    if (detail::top_pinned(sr) && bound_fresh) {
      top_limit = limit_candidate(g, *bound, seed.embedded);
      top_ptr = &top_limit;
    }
    detail::Selection sel =
        detail::select_candidate(std::move(sr), kappa, cfg.epsilon, top_ptr);
    diag.saturated = sel.saturated;
    diag.warning = std::move(sel.warning);
    if (failures > 0) {
      if (!diag.warning.empty()) diag.warning += "; ";
      diag.warning += std::to_string(failures) +
                      " shift(s) near the top were unsolvable and treated as "
                      "infeasible";
    }

    out.gammas.push_back(sel.chosen.gamma);
    out.correlations.push_back(sel.chosen.correlation);
    out.upper_bounds.push_back(bound->gamma_top);
    out.vectors.col(t) = sel.chosen.x;
    basis.append(sel.chosen.x);
    bound_fresh = false;
    if (!diag.warning.empty())
      out.warnings.push_back("vector " + std::to_string(t + 1) + ": " +
                             diag.warning);
    out.diagnostics.push_back(std::move(diag));
  }

  out.wall_seconds = elapsed_seconds(t0);
  return out;
}

SsEigenSolution solve_fixed_gammas(const Graph& g, const SeedVector& seed,
                                   const std::vector<double>& gammas,
                                   const SolverConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  const Eigen::Index n = g.node_count();
  validate_common(g, seed, "solve_fixed_gammas");
  if (gammas.empty())
    throw invalid_argument("solve_fixed_gammas: need at least one gamma");
  if (static_cast<Eigen::Index>(gammas.size()) > n - 1)
    throw invalid_argument("solve_fixed_gammas: more shifts than free directions");

  SsEigenSolution out;
  out.vectors.resize(n, static_cast<Eigen::Index>(gammas.size()));
  ProjectionBasis basis(g);
  for (std::size_t t = 0; t < gammas.size(); ++t) {
    GammaSolve sol = solve_at_gamma(g, basis, seed.embedded, gammas[t],
                                    cfg.cg_tol, cfg.cg_max_iter);
    StepDiagnostics diag;
    diag.cg_iterations = sol.cg_iterations;
    out.gammas.push_back(gammas[t]);
    out.correlations.push_back(sol.correlation);
    out.upper_bounds.push_back(std::numeric_limits<double>::quiet_NaN());
    out.vectors.col(static_cast<Eigen::Index>(t)) = sol.x;
    basis.append(sol.x);
    out.diagnostics.push_back(std::move(diag));
  }
  out.wall_seconds = elapsed_seconds(t0);
  return out;
}

CorrelationCurve correlation_curve(const Graph& g, const SeedVector& seed,
                                   const std::vector<double>& gammas,
                                   const SolverConfig& cfg) {
  validate_common(g, seed, "correlation_curve");
  ProjectionBasis basis(g);
  UpperBound bound = compute_upper_bound(g, basis, cfg.lanczos_tol,
                                         cfg.lanczos_max_iter, cfg.rng_seed);
  CorrelationCurve curve;
  for (double gamma : gammas) {
    CurvePoint pt{gamma, std::numeric_limits<double>::quiet_NaN()};
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", gamma);
    std::string gname(buf);
    if (gamma >= bound.gamma_top) {
      std::snprintf(buf, sizeof(buf), "%.6g", bound.gamma_top);
      curve.notices.push_back("gamma " + gname +
                              " is at or above the feasible top " +
                              std::string(buf) + "; no solve");
    } else {
      if (gamma <= -g.volume()) {
        std::snprintf(buf, sizeof(buf), "%.6g", -g.volume());
        curve.notices.push_back("gamma " + gname +
                                " lies at or below -vol(G) = " +
                                std::string(buf) +
                                "; outside the nominal interval");
      }
      try {
        pt.correlation = solve_at_gamma(g, basis, seed.embedded, gamma,
                                        cfg.cg_tol, cfg.cg_max_iter)
                             .correlation;
      } catch (const numerical_error& e) {
        curve.notices.push_back("gamma " + gname + ": " + e.what());
      }
    }
    curve.points.push_back(pt);
  }
  return curve;
}

}  // namespace sseig
