#include "sseig/detail/bisection.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "sseig/errors.hpp"

namespace sseig::detail {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

SearchResult run_bisection(double lo, double hi, double kappa, double epsilon,
                           int max_bisections,
                           const std::function<GammaSolve(double)>& solve_shift) {
  SearchResult res;
  double prev_gamma = std::numeric_limits<double>::quiet_NaN();
  for (int it = 0; it < max_bisections; ++it) {
    double gamma = 0.5 * (lo + hi);
    if (it > 0 && std::abs(gamma - prev_gamma) <= epsilon) break;
    prev_gamma = gamma;
    ++res.bisections;

    GammaSolve sol;
    try {
      sol = solve_shift(gamma);
    } catch (const numerical_error& e) {
      ++res.failures;
      if (res.first_failure.empty()) res.first_failure = e.what();
      hi = gamma;
      continue;
    }
    res.solver_iterations += sol.cg_iterations;

    Candidate cand{std::move(sol.x), gamma, sol.correlation};
    if (std::abs(cand.correlation - kappa) <= epsilon) {
      res.feasible = std::move(cand);
      res.accepted = true;
      break;
    }
    if (cand.correlation > kappa) {
      res.feasible = std::move(cand);
      lo = gamma;
    } else {
      res.saw_below = true;
      if (!res.best_low || cand.correlation > res.best_low->correlation)
        res.best_low = std::move(cand);
      hi = gamma;
    }
  }
  return res;
}

bool top_pinned(const SearchResult& sr) {
  return !sr.accepted && !sr.saw_below && sr.feasible.has_value();
}

Selection select_candidate(SearchResult sr, double kappa, double epsilon,
                           const Candidate* top_limit) {
  Selection sel;
  if (sr.accepted) {
    sel.chosen = std::move(*sr.feasible);
    return sel;
  }
  if (top_pinned(sr)) {
    sel.saturated = true;
    if (top_limit && top_limit->correlation >= kappa - epsilon &&
        std::abs(top_limit->correlation - kappa) <=
            std::abs(sr.feasible->correlation - kappa)) {
      sel.chosen = *top_limit;
    } else {
      sel.chosen = std::move(*sr.feasible);
    }
    if (std::abs(sel.chosen.correlation - kappa) > epsilon)
      sel.warning = "kappa " + format_double(kappa) +
                    " sits below the correlation floor " +
                    format_double(sel.chosen.correlation) +
                    " at the feasible top; returning the limit solution";
    return sel;
  }
  if (sr.feasible) {
    sel.chosen = std::move(*sr.feasible);
    if (std::abs(sel.chosen.correlation - kappa) > epsilon)
      sel.warning = "bracket collapsed with correlation " +
                    format_double(sel.chosen.correlation) + " away from kappa " +
                    format_double(kappa);
    return sel;
  }
  if (sr.best_low) {
    sel.chosen = std::move(*sr.best_low);
    sel.saturated = true;
    sel.warning = "kappa " + format_double(kappa) +
                  " unattainable; best correlation " +
                  format_double(sel.chosen.correlation) + " at gamma " +
                  format_double(sel.chosen.gamma);
    return sel;
  }
  std::string msg = "no shift in the interval could be solved";
  if (!sr.first_failure.empty()) msg += ": " + sr.first_failure;
  throw numerical_error(msg);
}

}  // namespace sseig::detail
