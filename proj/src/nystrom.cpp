#include "sseig/nystrom.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <utility>

#include "sseig/dense_oracle.hpp"
#include "sseig/detail/bisection.hpp"
#include "sseig/errors.hpp"

namespace sseig {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void check_model(const Graph& g, const NystromModel& model, const char* who) {
  if (model.V.rows() != g.node_count())
    throw invalid_argument(std::string(who) +
                           ": model size does not match the graph");
  if (model.graph_digest != g.digest())
    throw io_error(std::string(who) +
                   ": model does not match the graph (digest mismatch)");
}

// Resolvent weights: ((1-gamma) I - V diag(lambda) V^T)^{-1} equals
// (I + V diag(sigma) V^T) / (1-gamma) with sigma_i = lambda_i / (1-gamma-lambda_i).
Eigen::VectorXd sigma_weights(const Eigen::VectorXd& lambda, double gamma) {
  const double c = 1.0 - gamma;
  Eigen::VectorXd sig(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    double li = lambda[i];
    if (li == 0.0) {
      sig[i] = 0.0;
      continue;
    }
    double den = c - li;
    if (std::abs(den) < 1e-10)
      throw numerical_error("shift 1 - gamma collides with model eigenvalue " +
                            format_double(li));
    sig[i] = li / den;
  }
  return sig;
}

GammaSolve finalize_solution(const Graph& g, const Eigen::VectorXd& s,
                             Eigen::VectorXd x) {
  double norm = g.norm_d(x);
  if (!(norm > 1e-300))
    throw numerical_error("low-rank solve produced a vanishing solution");
  x /= norm;
  double corr = g.dot_d(x, s);
  if (corr < 0.0) {
    x = -x;
    corr = -corr;
  }
  return {std::move(x), corr * corr, 0};
}

// Pseudo-inverse apply through a spectral decomposition, zeroing modes below
// a relative cutoff.
Eigen::VectorXd spectral_pinv_apply(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es,
                                    const Eigen::VectorXd& v) {
  const Eigen::VectorXd& vals = es.eigenvalues();
  double scale = vals.cwiseAbs().maxCoeff();
  double cutoff = 1e-12 * std::max(scale, 1e-300);
  Eigen::VectorXd coeffs = es.eigenvectors().transpose() * v;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    coeffs[i] = std::abs(vals[i]) > cutoff ? coeffs[i] / vals[i] : 0.0;
  return es.eigenvectors() * coeffs;
}

}  // namespace

NystromModel build_nystrom(const Graph& g, Eigen::Index m,
                           std::uint64_t rng_seed) {
  const Eigen::Index n = g.node_count();
  if (n < 1) throw invalid_argument("build_nystrom: empty graph");
  if (m < 1 || m > n)
    throw invalid_argument("build_nystrom: m must lie in [1, n]");

  NystromModel model;
  model.graph_digest = g.digest();

  // Uniform landmark sample without replacement.
  std::vector<Eigen::Index> idx(n);
  std::iota(idx.begin(), idx.end(), Eigen::Index(0));
  std::mt19937_64 rng(rng_seed);
  for (Eigen::Index i = 0; i < m; ++i) {
    std::uniform_int_distribution<Eigen::Index> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  std::vector<char> in_sample(n, 0);
  for (Eigen::Index i = 0; i < m; ++i) in_sample[idx[i]] = 1;
  std::vector<Eigen::Index> complement;
  for (Eigen::Index v = 0; v < n; ++v)
    (in_sample[v] ? model.sample_indices : complement).push_back(v);

  if (m == n) {
    // Full sample: the exact dense eigendecomposition of the normalized
    // adjacency, negative modes included.
    Eigen::MatrixXd atil = Eigen::MatrixXd(g.adjacency());
    atil = g.inv_sqrt_degrees().asDiagonal() * atil *
           g.inv_sqrt_degrees().asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(atil);
    if (es.info() != Eigen::Success)
      throw numerical_error("build_nystrom: dense eigensolver failed");
    model.V = es.eigenvectors();
    model.lambda = es.eigenvalues();
    return model;
  }

  const Eigen::Index q = n - m;
  std::vector<Eigen::Index> pos(n);
  for (Eigen::Index i = 0; i < m; ++i) pos[model.sample_indices[i]] = i;
  for (Eigen::Index j = 0; j < q; ++j) pos[complement[j]] = m + j;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, q);
  const auto& adj = g.adjacency();
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Index u = model.sample_indices[i];
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(adj, u);
         it; ++it) {
      Eigen::Index p = pos[it.col()];
      if (p < m)
        a(i, p) = it.value();
      else
        b(i, p - m) = it.value();
    }
  }

  // Degrees of the extended adjacency [A B; B^T B^T A^{-1} B], matrix-free
  // for the lower block. The landmark rows keep their exact degrees.
  Eigen::VectorXd rs_b = b.rowwise().sum();
  Eigen::VectorXd d_upper = a.rowwise().sum() + rs_b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esa(a);
  if (esa.info() != Eigen::Success)
    throw numerical_error("build_nystrom: landmark block eigensolver failed");
  Eigen::VectorXd d_lower =
      b.colwise().sum().transpose() + b.transpose() * spectral_pinv_apply(esa, rs_b);

  for (Eigen::Index i = 0; i < m; ++i)
    if (!(d_upper[i] > 0.0))
      throw numerical_error("build_nystrom: landmark node " +
                            std::to_string(model.sample_indices[i]) +
                            " has nonpositive degree");
  for (Eigen::Index j = 0; j < q; ++j)
    if (!(d_lower[j] > 0.0))
      throw numerical_error(
          "build_nystrom: extension gives node " +
          std::to_string(complement[j]) +
          " a nonpositive degree; resample with another seed or a larger m");

  Eigen::VectorXd du_is = d_upper.cwiseSqrt().cwiseInverse();
  Eigen::VectorXd dl_is = d_lower.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd atil = du_is.asDiagonal() * a * du_is.asDiagonal();
  Eigen::MatrixXd btil = du_is.asDiagonal() * b * dl_is.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esat(atil);
  if (esat.info() != Eigen::Success)
    throw numerical_error("build_nystrom: normalized landmark block eigensolver failed");
  const Eigen::VectorXd& av = esat.eigenvalues();
  double amax = av.cwiseAbs().maxCoeff();
  double amin = av.cwiseAbs().minCoeff();
  if (!(amax > 0.0) || amin <= 0.0 || amax / amin > 1e12)
    throw numerical_error(
        "build_nystrom: landmark block condition exceeds 1e12; resample with "
        "another seed or a larger m");

  Eigen::VectorXd inv_root = Eigen::VectorXd::Zero(m);
  int dropped_a = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (av[i] > 1e-10)
      inv_root[i] = 1.0 / std::sqrt(av[i]);
    else
      ++dropped_a;
  }
  if (dropped_a > 0)
    model.warnings.push_back("dropped " + std::to_string(dropped_a) +
                             " landmark-block mode(s) at or below the 1e-10 "
                             "eigenvalue floor");
  Eigen::MatrixXd a_inv_root = esat.eigenvectors() * inv_root.asDiagonal() *
                               esat.eigenvectors().transpose();

  Eigen::MatrixXd s_mat =
      atil + a_inv_root * (btil * btil.transpose()) * a_inv_root;
  s_mat = 0.5 * (s_mat + s_mat.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ess(s_mat);
  if (ess.info() != Eigen::Success)
    throw numerical_error("build_nystrom: extension eigensolver failed");

  std::vector<Eigen::Index> keep;
  double dropped_mass = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (ess.eigenvalues()[i] > 0.0)
      keep.push_back(i);
    else
      dropped_mass += std::abs(ess.eigenvalues()[i]);
  }
  if (keep.empty())
    throw numerical_error("build_nystrom: no positive extension mode survived");
  if (dropped_mass > 0.0) {
    model.discarded_mass += dropped_mass;
    model.warnings.push_back(
        "dropped " + std::to_string(m - static_cast<Eigen::Index>(keep.size())) +
        " nonpositive extension mode(s) carrying mass " +
        format_double(dropped_mass));
  }

  const Eigen::Index r0 = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd u_plus(m, r0);
  Eigen::VectorXd lam_plus(r0);
  for (Eigen::Index i = 0; i < r0; ++i) {
    u_plus.col(i) = ess.eigenvectors().col(keep[i]);
    lam_plus[i] = ess.eigenvalues()[keep[i]];
  }

  Eigen::MatrixXd core =
      a_inv_root * u_plus * lam_plus.cwiseSqrt().cwiseInverse().asDiagonal();
  Eigen::MatrixXd stacked(n, r0);
  stacked.topRows(m) = atil * core;
  stacked.bottomRows(q) = btil.transpose() * core;

  // Pseudo-roots and dropped modes bend the columns away from orthonormal;
  // re-compress through a QR so V^T V = I holds exactly while V diag(l) V^T
  // is preserved.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(stacked);
  Eigen::MatrixXd thin_q =
      qr.householderQ() * Eigen::MatrixXd::Identity(n, r0);
  Eigen::MatrixXd rmat = qr.matrixQR()
                             .topRows(r0)
                             .template triangularView<Eigen::Upper>();
  Eigen::MatrixXd mid = rmat * lam_plus.asDiagonal() * rmat.transpose();
  mid = 0.5 * (mid + mid.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esm(mid);
  if (esm.info() != Eigen::Success)
    throw numerical_error("build_nystrom: re-compression eigensolver failed");

  double mscale = esm.eigenvalues().cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> keep2;
  for (Eigen::Index i = 0; i < r0; ++i)
    if (esm.eigenvalues()[i] > 1e-14 * mscale) keep2.push_back(i);
  if (keep2.empty())
    throw numerical_error("build_nystrom: re-compression left no usable mode");

  const Eigen::Index r = static_cast<Eigen::Index>(keep2.size());
  Eigen::MatrixXd v_stacked(n, r);
  Eigen::VectorXd lambda(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    v_stacked.col(i) = thin_q * esm.eigenvectors().col(keep2[i]);
    lambda[i] = esm.eigenvalues()[keep2[i]];
  }

  model.V.resize(n, r);
  for (Eigen::Index i = 0; i < m; ++i)
    model.V.row(model.sample_indices[i]) = v_stacked.row(i);
  for (Eigen::Index j = 0; j < q; ++j)
    model.V.row(complement[j]) = v_stacked.row(m + j);
  model.lambda = lambda;
  return model;
}

namespace {

template <typename T>
void put_pod(std::string& buf, const T& v) {
  buf.append(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get_pod(const std::string& buf, std::size_t& cursor) {
  if (cursor + sizeof(T) > buf.size())
    throw io_error("model file is truncated");
  T v;
  std::memcpy(&v, buf.data() + cursor, sizeof v);
  cursor += sizeof v;
  return v;
}

}  // namespace

void save_nystrom(const NystromModel& model, const std::string& path) {
  std::string buf;
  buf.append("NYSM", 4);
  put_pod<std::uint32_t>(buf, 1);  // format version
  put_pod(buf, model.graph_digest);
  const std::int64_t n = model.V.rows();
  const std::int64_t r = model.V.cols();
  const std::int64_t ms = static_cast<std::int64_t>(model.sample_indices.size());
  put_pod(buf, n);
  put_pod(buf, r);
  put_pod(buf, ms);
  put_pod(buf, model.discarded_mass);
  for (Eigen::Index s : model.sample_indices)
    put_pod<std::int64_t>(buf, static_cast<std::int64_t>(s));
  for (Eigen::Index i = 0; i < r; ++i) put_pod(buf, model.lambda[i]);
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index i = 0; i < n; ++i) put_pod(buf, model.V(i, j));
  std::uint64_t check = fnv1a64(buf);
  put_pod(buf, check);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  out.flush();
  if (!out) throw io_error("failed writing " + path);
}

NystromModel load_nystrom(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (buf.size() < 4 + sizeof(std::uint32_t) + sizeof(std::uint64_t))
    throw io_error(path + ": not a model file (too short)");

  std::string payload = buf.substr(0, buf.size() - sizeof(std::uint64_t));
  std::size_t tail = buf.size() - sizeof(std::uint64_t);
  std::uint64_t stored = get_pod<std::uint64_t>(buf, tail);
  if (fnv1a64(payload) != stored)
    throw io_error(path + ": checksum mismatch (corrupt model file)");

  std::size_t cursor = 0;
  if (payload.compare(0, 4, "NYSM") != 0)
    throw io_error(path + ": not a model file (bad magic)");
  cursor = 4;
  std::uint32_t version = get_pod<std::uint32_t>(payload, cursor);
  if (version != 1)
    throw io_error(path + ": unsupported model format version " +
                   std::to_string(version));

  NystromModel model;
  model.graph_digest = get_pod<std::uint64_t>(payload, cursor);
  std::int64_t n = get_pod<std::int64_t>(payload, cursor);
  std::int64_t r = get_pod<std::int64_t>(payload, cursor);
  std::int64_t ms = get_pod<std::int64_t>(payload, cursor);
  model.discarded_mass = get_pod<double>(payload, cursor);
  if (n < 1 || r < 0 || ms < 0 || ms > n || r > n)
    throw io_error(path + ": inconsistent model dimensions");

  model.sample_indices.resize(static_cast<std::size_t>(ms));
  for (auto& s : model.sample_indices) {
    std::int64_t v = get_pod<std::int64_t>(payload, cursor);
    if (v < 0 || v >= n) throw io_error(path + ": sample index out of range");
    s = static_cast<Eigen::Index>(v);
  }
  model.lambda.resize(r);
  for (std::int64_t i = 0; i < r; ++i)
    model.lambda[i] = get_pod<double>(payload, cursor);
  model.V.resize(n, r);
  for (std::int64_t j = 0; j < r; ++j)
    for (std::int64_t i = 0; i < n; ++i)
      model.V(i, j) = get_pod<double>(payload, cursor);
  if (cursor != payload.size())
    throw io_error(path + ": trailing bytes after model payload");
  return model;
}

GammaSolve woodbury_leading_solve(const Graph& g, const NystromModel& model,
                                  const Eigen::VectorXd& seed_embedded,
                                  double gamma) {
  check_model(g, model, "woodbury_leading_solve");
  if (seed_embedded.size() != g.node_count())
    throw invalid_argument(
        "woodbury_leading_solve: seed length does not match the graph");
  const double c = 1.0 - gamma;
  if (std::abs(c) < 1e-300)
    throw numerical_error("woodbury_leading_solve: gamma of 1 makes the resolvent singular");

  Eigen::VectorXd sig = sigma_weights(model.lambda, gamma);
  Eigen::VectorXd bvec = g.sqrt_degrees().cwiseProduct(seed_embedded);
  Eigen::VectorXd y =
      (bvec + model.V * sig.cwiseProduct(model.V.transpose() * bvec)) / c;
  Eigen::VectorXd v0 = g.sqrt_degrees() / std::sqrt(g.volume());
  y -= v0 * v0.dot(y);
  return finalize_solution(g, seed_embedded,
                           g.inv_sqrt_degrees().cwiseProduct(y));
}

GammaSolve lagrangian_project_solve(const Graph& g, const NystromModel& model,
                                    const ProjectionBasis& basis,
                                    const Eigen::VectorXd& seed_embedded,
                                    double gamma) {
  check_model(g, model, "lagrangian_project_solve");
  if (seed_embedded.size() != g.node_count())
    throw invalid_argument(
        "lagrangian_project_solve: seed length does not match the graph");
  const double c = 1.0 - gamma;
  if (std::abs(c) < 1e-300)
    throw numerical_error("lagrangian_project_solve: gamma of 1 makes the resolvent singular");

  Eigen::VectorXd sig = sigma_weights(model.lambda, gamma);
  const Eigen::MatrixXd& y_basis = basis.normalized();
  const Eigen::Index t = y_basis.cols();

  Eigen::VectorXd bvec = g.sqrt_degrees().cwiseProduct(seed_embedded);
  Eigen::VectorXd pb =
      (bvec + model.V * sig.cwiseProduct(model.V.transpose() * bvec)) / c;
  Eigen::MatrixXd w = model.V.transpose() * y_basis;
  Eigen::MatrixXd py = (y_basis + model.V * (sig.asDiagonal() * w)) / c;
  Eigen::MatrixXd small = (Eigen::MatrixXd::Identity(t, t) +
                           w.transpose() * (sig.asDiagonal() * w)) /
                          c;
  small = 0.5 * (small + small.transpose());
  Eigen::VectorXd z = dense_pseudo_inverse(small) * (y_basis.transpose() * pb);
  Eigen::VectorXd y = pb - py * z;
  y = basis.apply_normalized(y);
  return finalize_solution(g, seed_embedded,
                           g.inv_sqrt_degrees().cwiseProduct(y));
}

UpperBound lowrank_upper_bound(const Graph& g, const NystromModel& model,
                               const ProjectionBasis& basis) {
  check_model(g, model, "lowrank_upper_bound");
  const Eigen::Index n = g.node_count();
  const Eigen::Index t = basis.count();
  const Eigen::Index r = model.V.cols();
  if (t >= n)
    throw invalid_argument("lowrank_upper_bound: basis spans the whole space");

  // Nonzero spectrum of the projected model adjacency via the Gram matrix
  // G = V^T (I - Y Y^T) V = I - W W^T: it matches the nonzero spectrum of
  // G^{1/2} diag(lambda) G^{1/2}. Directions outside range(V) contribute
  // exact zeros whenever the complement of the basis is bigger than the
  // numerical rank.
  Eigen::MatrixXd w = model.V.transpose() * basis.normalized();
  Eigen::MatrixXd wwt = w * w.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esw(wwt);
  if (esw.info() != Eigen::Success)
    throw numerical_error("lowrank_upper_bound: Gram eigensolver failed");
  Eigen::VectorXd gvals =
      (Eigen::VectorXd::Ones(r) - esw.eigenvalues()).cwiseMax(0.0);
  Eigen::MatrixXd groot = esw.eigenvectors() * gvals.cwiseSqrt().asDiagonal() *
                          esw.eigenvectors().transpose();
  Eigen::MatrixXd h = groot * model.lambda.asDiagonal() * groot;
  h = 0.5 * (h + h.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esh(h);
  if (esh.info() != Eigen::Success)
    throw numerical_error("lowrank_upper_bound: projected eigensolver failed");
  const Eigen::VectorXd& mu = esh.eigenvalues();

  double scale = std::max(mu.cwiseAbs().maxCoeff(), 1e-30);
  double tol = 1e-12 * scale;
  Eigen::Index rank = 0;
  Eigen::Index best = -1;
  double lam = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (std::abs(mu[i]) > tol) {
      ++rank;
      if (mu[i] > lam) {
        lam = mu[i];
        best = i;
      }
    }
  }
  if (rank == 0 || ((n - t - rank) > 0 && lam < 0.0)) {
    lam = 0.0;  // flat model null directions top the restricted spectrum
    best = -1;
  }

  UpperBound out;
  out.gamma_top = 1.0 - lam;
  out.iterations = 0;
  if (best >= 0) {
    // Back out the operator eigenvector: c = G^{-1/2} q, u = (I - Y Y^T) V c.
    double gmax = std::max(gvals.maxCoeff(), 1e-300);
    Eigen::VectorXd coeffs = esw.eigenvectors().transpose() * esh.eigenvectors().col(best);
    for (Eigen::Index i = 0; i < r; ++i)
      coeffs[i] = gvals[i] > 1e-12 * gmax ? coeffs[i] / std::sqrt(gvals[i]) : 0.0;
    Eigen::VectorXd u = basis.apply_normalized(
        model.V * (esw.eigenvectors() * coeffs));
    Eigen::VectorXd x = g.inv_sqrt_degrees().cwiseProduct(u);
    double norm = g.norm_d(x);
    if (norm > 1e-12) out.extremal = x / norm;
  }
  return out;
}

SsEigenSolution solve_nystrom(const Graph& g, const NystromModel& model,
                              const SeedVector& seed, const SolverConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  check_model(g, model, "solve_nystrom");
  const Eigen::Index n = g.node_count();
  if (!g.connected())
    throw invalid_argument("solve_nystrom: graph must be connected");
  if (seed.embedded.size() != n)
    throw invalid_argument("solve_nystrom: seed does not match the graph");
  if (cfg.k < 1) throw invalid_argument("solve_nystrom: k must be at least 1");
  if (cfg.k > n - 1)
    throw invalid_argument(
        "solve_nystrom: k must leave room outside the trivial direction");
  if (static_cast<int>(cfg.kappa.size()) != cfg.k)
    throw invalid_argument("solve_nystrom: kappa must list one target per vector");
  if (!(cfg.epsilon > 0.0))
    throw invalid_argument("solve_nystrom: epsilon must be positive");
  if (cfg.max_bisections < 1)
    throw invalid_argument("solve_nystrom: max_bisections must be positive");

  SsEigenSolution out;
  out.vectors.resize(n, cfg.k);
  ProjectionBasis basis(g);

  auto solve_shift = [&](double gamma) {
    return lagrangian_project_solve(g, model, basis, seed.embedded, gamma);
  };

  for (int t = 0; t < cfg.k; ++t) {
    StepDiagnostics diag;
    const double kappa = cfg.kappa[t];

    // Bounds under the model cost an r x r eigenproblem; always fresh.
    UpperBound bound = lowrank_upper_bound(g, model, basis);

    detail::SearchResult sr =
        detail::run_bisection(-g.volume(), bound.gamma_top, kappa, cfg.epsilon,
                              cfg.max_bisections, solve_shift);
    diag.bisections += sr.bisections;
    int failures = sr.failures;

    detail::Candidate top_limit;
    const detail::Candidate* top_ptr = nullptr;
    if (detail::top_pinned(sr) && bound.extremal.size() == n) {
      top_limit.x = bound.extremal;
      double c0 = g.dot_d(top_limit.x, seed.embedded);
      if (c0 < 0.0) {
        top_limit.x = -top_limit.x;
        c0 = -c0;
      }
      top_limit.gamma = bound.gamma_top;
      top_limit.correlation = c0 * c0;
      top_ptr = &top_limit;
    }
    detail::Selection sel =
        detail::select_candidate(std::move(sr), kappa, cfg.epsilon, top_ptr);
    diag.saturated = sel.saturated;
    diag.warning = std::move(sel.warning);
    if (failures > 0) {
      if (!diag.warning.empty()) diag.warning += "; ";
      diag.warning += std::to_string(failures) +
                      " shift(s) were unsolvable and treated as infeasible";
    }

    out.gammas.push_back(sel.chosen.gamma);
    out.correlations.push_back(sel.chosen.correlation);
    out.upper_bounds.push_back(bound.gamma_top);
    out.vectors.col(t) = sel.chosen.x;
    basis.append(sel.chosen.x);
    if (!diag.warning.empty())
      out.warnings.push_back("vector " + std::to_string(t + 1) + ": " +
                             diag.warning);
    out.diagnostics.push_back(std::move(diag));
  }

  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

}  // namespace sseig
