#ifndef SSEIG_DETAIL_BISECTION_HPP
#define SSEIG_DETAIL_BISECTION_HPP

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>

#include "sseig/solver.hpp"

namespace sseig::detail {

struct Candidate {
  Eigen::VectorXd x;
  double gamma = 0.0;
  double correlation = -1.0;
};

struct SearchResult {
  std::optional<Candidate> feasible;  // latest solve with correlation >= kappa
  std::optional<Candidate> best_low;  // best solve with correlation < kappa
  bool saw_below = false;
  bool accepted = false;  // |correlation - kappa| <= epsilon reached
  int bisections = 0;
  int solver_iterations = 0;  // inner iteration count; 0 for closed forms
  int failures = 0;           // shifts the solve threw on
  std::string first_failure;
};

// Bisection on the shift over [lo, hi]. Correlation is nonincreasing in the
// shift, so a solve above kappa raises the lower end and one below kappa
// lowers the upper end. Shifts the callback throws numerical_error on are
// treated as infeasible-high. Stops once the midpoint moves by at most
// epsilon or |correlation - kappa| <= epsilon.
SearchResult run_bisection(double lo, double hi, double kappa, double epsilon,
                           int max_bisections,
                           const std::function<GammaSolve(double)>& solve_shift);

// Search ended pinned at the top of the interval: every solvable shift kept
// more correlation than the target.
bool top_pinned(const SearchResult& sr);

struct Selection {
  Candidate chosen;
  bool saturated = false;
  std::string warning;
};

// Final pick after the search. top_limit, when given, is the shift -> top
// limit of the solves (the restricted pencil eigenvector) and is preferred
// on a top-pinned search while it carries at least the target correlation.
// Throws numerical_error when the search produced nothing usable.
Selection select_candidate(SearchResult sr, double kappa, double epsilon,
                           const Candidate* top_limit);

}  // namespace sseig::detail

#endif
