#include "sseig/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "sseig/errors.hpp"

namespace sseig {

namespace {

// Number of eigenvalues of the tridiagonal (alpha, beta) strictly below x,
// by the Sturm sequence of the shifted LDL^T recurrence.
int count_below(const std::vector<double>& alpha, const std::vector<double>& beta, double x) {
  int count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    double off = i == 0 ? 0.0 : beta[i - 1];
    d = alpha[i] - x - (off * off) / d;
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
  }
  return count;
}

double tridiag_lambda_max(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const std::size_t m = alpha.size();
  double lo = alpha[0], hi = alpha[0];
  for (std::size_t i = 0; i < m; ++i) {
    double spread = (i > 0 ? std::abs(beta[i - 1]) : 0.0) + (i + 1 < m ? std::abs(beta[i]) : 0.0);
    lo = std::min(lo, alpha[i] - spread);
    hi = std::max(hi, alpha[i] + spread);
  }
  double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
  for (int it = 0; it < 200 && hi - lo > 1e-15 * scale; ++it) {
    double mid = 0.5 * (lo + hi);
    if (count_below(alpha, beta, mid) >= static_cast<int>(m))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// One inverse-iteration sweep (T - shift I) u = rhs with partial pivoting.
Eigen::VectorXd tridiag_shifted_solve(const std::vector<double>& alpha,
                                      const std::vector<double>& beta, double shift,
                                      Eigen::VectorXd rhs) {
  const std::size_t m = alpha.size();
  std::vector<double> d(m), e(m, 0.0), f(m, 0.0), sub(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) d[i] = alpha[i] - shift;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    e[i] = beta[i];
    sub[i] = beta[i];
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (std::abs(sub[i]) > std::abs(d[i])) {
      std::swap(d[i], sub[i]);
      std::swap(e[i], d[i + 1]);
      if (i + 2 < m) f[i] = e[i + 1], e[i + 1] = 0.0;
      std::swap(rhs[static_cast<Eigen::Index>(i)], rhs[static_cast<Eigen::Index>(i + 1)]);
    }
    if (d[i] == 0.0) d[i] = 1e-300;
    double mult = sub[i] / d[i];
    d[i + 1] -= mult * e[i];
    if (i + 2 < m) e[i + 1] -= mult * f[i];
    rhs[static_cast<Eigen::Index>(i + 1)] -= mult * rhs[static_cast<Eigen::Index>(i)];
  }
  if (d[m - 1] == 0.0) d[m - 1] = 1e-300;
  Eigen::VectorXd u(static_cast<Eigen::Index>(m));
  for (std::size_t ii = m; ii-- > 0;) {
    double val = rhs[static_cast<Eigen::Index>(ii)];
    if (ii + 1 < m) val -= e[ii] * u[static_cast<Eigen::Index>(ii + 1)];
    if (ii + 2 < m) val -= f[ii] * u[static_cast<Eigen::Index>(ii + 2)];
    u[static_cast<Eigen::Index>(ii)] = val / d[ii];
  }
  return u;
}

Eigen::VectorXd ritz_vector(const std::vector<double>& alpha, const std::vector<double>& beta,
                            double lambda) {
  const std::size_t m = alpha.size();
  double scale = std::abs(lambda);
  for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(alpha[i]));
  double shift = lambda + std::max(scale, 1.0) * 1e-13;
  Eigen::VectorXd u = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m));
  u.normalize();
  for (int pass = 0; pass < 2; ++pass) {
    u = tridiag_shifted_solve(alpha, beta, shift, u);
    double norm = u.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      u = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m)).normalized();
      break;
    }
    u /= norm;
  }
  return u;
}

}  // namespace

LanczosResult largest_algebraic_eigenvalue(const LinearOperator& op, double tol, int max_iter,
                                           std::uint64_t rng_seed,
                                           const Eigen::MatrixXd* orthogonal_to) {
  const Eigen::Index n = op.dim();
  if (n < 1) throw invalid_argument("lanczos: empty operator");
  if (!op.symmetric())
    throw invalid_argument("lanczos: operator must be declared symmetric");
  if (!(tol > 0.0)) throw invalid_argument("lanczos: tolerance must be positive");
  Eigen::Index constrained = orthogonal_to ? orthogonal_to->cols() : 0;
  Eigen::Index subspace = n - constrained;
  if (subspace < 1) throw invalid_argument("lanczos: constraint basis spans the whole space");
  const Eigen::Index m_cap = std::min<Eigen::Index>(subspace, std::max(max_iter, 1));

  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto constrain = [&](Eigen::VectorXd& w) {
    if (orthogonal_to && orthogonal_to->cols() > 0)
      w.noalias() -= (*orthogonal_to) * (orthogonal_to->transpose() * w);
  };

  Eigen::MatrixXd basis(n, std::min<Eigen::Index>(m_cap, 64));
  std::vector<double> alpha, beta;
  alpha.reserve(static_cast<std::size_t>(m_cap));

  Eigen::VectorXd v(n);
  for (int attempt = 0;; ++attempt) {
    for (Eigen::Index i = 0; i < n; ++i) v[i] = gauss(rng);
    constrain(v);
    double norm = v.norm();
    if (norm > 1e-8) {
      v /= norm;
      break;
    }
    if (attempt > 8) throw numerical_error("lanczos: cannot find a start vector");
  }

  LanczosResult out;
  Eigen::VectorXd u;
  double beta_last = 0.0;
  bool exhausted = false;

  for (Eigen::Index j = 0; j < m_cap; ++j) {
    if (j >= basis.cols())
      basis.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(m_cap, 2 * basis.cols()));
    basis.col(j) = v;

    Eigen::VectorXd w = op(v);
    ++out.iterations;
    double a = v.dot(w);
    alpha.push_back(a);

    w.noalias() -= a * v;
    if (j > 0) w.noalias() -= beta_last * basis.col(j - 1);
    constrain(w);
    // Full reorthogonalization; a second pass when cancellation was severe.
    double pre = w.norm();
    auto block = basis.leftCols(j + 1);
    w.noalias() -= block * (block.transpose() * w);
    if (w.norm() < 0.7 * pre) {
      w.noalias() -= block * (block.transpose() * w);
      constrain(w);
    }

    double b = w.norm();
    double lam = tridiag_lambda_max(alpha, beta);
    u = ritz_vector(alpha, beta, lam);
    double resid = std::abs(b * u[u.size() - 1]);
    out.value = lam;
    out.residual = resid;
    double breakdown_scale = std::max(std::abs(a), std::abs(lam)) + std::abs(beta_last);
    if (b <= 1e-13 * std::max(breakdown_scale, 1.0)) {
      exhausted = true;
      out.residual = 0.0;
      break;
    }
    if (resid <= tol * std::max(std::abs(lam), 1e-30)) break;
    beta.push_back(b);
    beta_last = b;
    v = w / b;
  }

  if (!exhausted && out.residual > tol * std::max(std::abs(out.value), 1e-30))
    throw numerical_error("lanczos: residual " + std::to_string(out.residual) + " after " +
                          std::to_string(out.iterations) + " iterations");

  out.vector = basis.leftCols(static_cast<Eigen::Index>(alpha.size())) * u;
  if (orthogonal_to && orthogonal_to->cols() > 0) {
    Eigen::VectorXd& x = out.vector;
    x.noalias() -= (*orthogonal_to) * (orthogonal_to->transpose() * x);
  }
  double norm = out.vector.norm();
  if (norm > 0.0) out.vector /= norm;
  return out;
}

}  // namespace sseig
