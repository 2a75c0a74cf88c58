#include "sseig/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sseig/dense_oracle.hpp"
#include "sseig/errors.hpp"
#include "sseig/generators.hpp"
#include "sseig/graph.hpp"
#include "sseig/graph_io.hpp"
#include "sseig/lemmas.hpp"
#include "sseig/nystrom.hpp"
#include "sseig/projection.hpp"
#include "sseig/push.hpp"
#include "sseig/seed.hpp"
#include "sseig/solver.hpp"
#include "sseig/version.hpp"

namespace sseig {
namespace {

using ordered_json = nlohmann::ordered_json;
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hex_digest(std::uint64_t d) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(d));
  return buf;
}

ordered_json graph_summary(const Graph& g) {
  return ordered_json{{"digest", hex_digest(g.digest())},
                      {"nodes", g.node_count()},
                      {"edges", static_cast<long long>(g.canonical_edges().size())},
                      {"volume", g.volume()}};
}

ordered_json manifest_skeleton(const std::string& command) {
  ordered_json m;
  m["schema_version"] = kMetadataSchemaVersion;
  m["tool_version"] = kVersion;
  m["command"] = command;
  return m;
}

void write_json_file(const std::string& path, const ordered_json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw io_error("failed while writing '" + path + "'");
}

Graph read_graph_logged(const std::string& path, std::ostream& log) {
  std::vector<std::string> warnings;
  Graph g = read_graph(path, GraphFormat::auto_detect, &warnings);
  for (const auto& w : warnings) log << "note: " << w << '\n';
  return g;
}

SeedVector resolve_seed(const Graph& g, const SeedSpec& spec) {
  if (!spec.file.empty() && !spec.nodes.empty())
    throw invalid_argument(
        "--seed-node: conflicts with --seed-file; give exactly one seed source");
  std::vector<std::pair<Eigen::Index, double>> support;
  const char* flag = "--seed-node";
  if (!spec.file.empty()) {
    flag = "--seed-file";
    support = read_seed_file(spec.file);
  } else if (!spec.nodes.empty()) {
    support.reserve(spec.nodes.size());
    for (Eigen::Index id : spec.nodes) support.emplace_back(id, 1.0);
  } else {
    throw invalid_argument(
        "--seed-node: a seed is required; pass node ids (--seed-node 0,5,9) or a "
        "weighted file (--seed-file path)");
  }
  try {
    return embed_seed(g, std::move(support));
  } catch (const invalid_argument& e) {
    throw invalid_argument(std::string(flag) + ": " + e.what());
  }
}

ordered_json seed_params(const SeedSpec& spec) {
  ordered_json j;
  if (!spec.file.empty()) {
    j["seed_file"] = spec.file;
  } else {
    j["seed_nodes"] = spec.nodes;
  }
  return j;
}

// Scalar kappa splits evenly across the k vectors; a full vector must have
// exactly k entries. Range and budget checks are repeated here so the error
// names the flag.
std::vector<double> resolve_kappa(const std::vector<double>& kappa, int k) {
  std::vector<double> out;
  if (kappa.size() == 1 && k > 1) {
    out.assign(static_cast<std::size_t>(k), kappa[0] / k);
  } else if (static_cast<int>(kappa.size()) == k) {
    out = kappa;
  } else {
    throw invalid_argument(
        "--kappa: give one value (split evenly across the k vectors) or exactly k=" +
        std::to_string(k) + " comma-separated values, got " +
        std::to_string(kappa.size()));
  }
  double sum = 0.0;
  for (double v : out) {
    if (!(v >= 0.0 && v <= 1.0))
      throw invalid_argument("--kappa: each target must lie in [0, 1], got " + fmt17(v));
    sum += v;
  }
  if (sum > 1.0 + 1e-12)
    throw invalid_argument("--kappa: targets must sum to at most 1, got " + fmt17(sum));
  return out;
}

// Fixed-shift counterpart of solve_nystrom: one Lagrangian solve per shift,
// deflating each accepted vector from the next.
SsEigenSolution nystrom_fixed_gammas(const Graph& g, const NystromModel& model,
                                     const SeedVector& seed,
                                     const std::vector<double>& gammas) {
  auto start = clock_type::now();
  const Eigen::Index n = g.node_count();
  const int k = static_cast<int>(gammas.size());
  ProjectionBasis basis(g);
  SsEigenSolution sol;
  sol.vectors.resize(n, k);
  for (int t = 0; t < k; ++t) {
    GammaSolve gs = lagrangian_project_solve(g, model, basis, seed.embedded, gammas[t]);
    sol.vectors.col(t) = gs.x;
    sol.gammas.push_back(gammas[t]);
    sol.correlations.push_back(gs.correlation);
    sol.upper_bounds.push_back(std::numeric_limits<double>::quiet_NaN());
    StepDiagnostics diag;
    diag.cg_iterations = gs.cg_iterations;
    sol.diagnostics.push_back(diag);
    basis.append(gs.x);
  }
  sol.wall_seconds = seconds_since(start);
  return sol;
}

void log_solution(const SsEigenSolution& sol, std::ostream& log) {
  for (std::size_t t = 0; t < sol.gammas.size(); ++t) {
    log << "vector " << (t + 1) << ": gamma=" << fmt17(sol.gammas[t])
        << " correlation=" << fmt17(sol.correlations[t]);
    if (t < sol.diagnostics.size() && sol.diagnostics[t].saturated) log << " [saturated]";
    log << '\n';
  }
  for (const auto& w : sol.warnings) log << "warning: " << w << '\n';
}

ordered_json diagnostics_json(const SsEigenSolution& sol) {
  ordered_json d;
  d["gammas"] = sol.gammas;
  d["correlations"] = sol.correlations;
  d["upper_bounds"] = sol.upper_bounds;
  std::vector<int> bis, cg, lan;
  std::vector<bool> sat;
  for (const auto& st : sol.diagnostics) {
    bis.push_back(st.bisections);
    cg.push_back(st.cg_iterations);
    lan.push_back(st.lanczos_iterations);
    sat.push_back(st.saturated);
  }
  d["bisections"] = bis;
  d["cg_iterations"] = cg;
  d["lanczos_iterations"] = lan;
  d["saturated"] = sat;
  d["warnings"] = sol.warnings;
  return d;
}

}  // namespace

int cmd_generate(const GenerateOptions& opt, std::ostream& log) {
  auto start = clock_type::now();
  ordered_json params;
  params["kind"] = opt.kind;
  Graph g;
  if (opt.kind == "ring") {
    if (opt.n < 3)
      throw invalid_argument("--n: ring size must be at least 3, got " +
                             std::to_string(opt.n));
    if (opt.z < 2 || opt.z % 2 != 0 || opt.z >= opt.n)
      throw invalid_argument(
          "--z: neighbor count must be a positive even integer below n, got " +
          std::to_string(opt.z));
    if (!(opt.p >= 0.0 && opt.p <= 1.0))
      throw invalid_argument("--p: rewiring probability must lie in [0, 1], got " +
                             fmt17(opt.p));
    RewireStats stats;
    g = generate_ring_lattice(opt.n, opt.z, opt.p, opt.seed, &stats);
    params["n"] = opt.n;
    params["z"] = opt.z;
    params["p"] = opt.p;
    params["seed"] = opt.seed;
    params["rewired"] = stats.rewired;
    params["rewire_skipped"] = stats.skipped;
  } else if (opt.kind == "grid") {
    if (opt.rows < 1 || opt.cols < 1 || opt.rows * opt.cols < 2)
      throw invalid_argument(
          "--rows/--cols: grid dimensions must be positive with at least two nodes "
          "in total");
    g = generate_grid(opt.rows, opt.cols);
    params["rows"] = opt.rows;
    params["cols"] = opt.cols;
  } else if (opt.kind == "knn") {
    Eigen::MatrixXd points = read_points_csv(opt.points_path);
    if (opt.neighbors < 1 || opt.neighbors >= points.rows())
      throw invalid_argument(
          "--neighbors: must lie in [1, points-1] = [1, " +
          std::to_string(points.rows() > 0 ? points.rows() - 1 : 0) + "], got " +
          std::to_string(opt.neighbors));
    g = build_knn_graph(points, opt.neighbors);
    params["points"] = opt.points_path;
    params["neighbors"] = opt.neighbors;
  } else {
    throw invalid_argument("generate: kind must be one of ring|grid|knn, got '" +
                           opt.kind + "'");
  }
  params["out"] = opt.out;

  write_graph(opt.out, g);
  ordered_json manifest = manifest_skeleton("generate");
  manifest["parameters"] = params;
  manifest["graph"] = graph_summary(g);
  manifest["rng_seeds"] = ordered_json{{"generator", opt.seed}};
  manifest["timings"] = ordered_json{{"total_seconds", seconds_since(start)}};
  write_json_file(opt.out + ".manifest.json", manifest);

  log << "wrote " << opt.out << ": " << g.node_count() << " nodes, "
      << g.canonical_edges().size() << " edges, digest " << hex_digest(g.digest())
      << '\n';
  return 0;
}

int cmd_solve(const SolveOptions& opt, std::ostream& log) {
  auto start = clock_type::now();
  if (opt.graph_path.empty())
    throw invalid_argument("--graph: a graph file is required");
  if (opt.method != "exact" && opt.method != "nystrom" && opt.method != "push")
    throw invalid_argument("--method: must be one of exact|nystrom|push, got '" +
                           opt.method + "'");

  auto read_start = clock_type::now();
  Graph g = read_graph_logged(opt.graph_path, log);
  double read_seconds = seconds_since(read_start);
  const Eigen::Index n = g.node_count();
  SeedVector seed = resolve_seed(g, opt.seed);

  // Fixed-shift mode: k is the number of shifts, kappa has no role.
  int k = opt.k;
  if (!opt.gammas.empty()) {
    if (!opt.kappa.empty())
      throw invalid_argument(
          "--kappa: conflicts with --gammas; fixed shifts skip the correlation "
          "search (drop one of the two)");
    if (opt.k != 1 && opt.k != static_cast<int>(opt.gammas.size()))
      throw invalid_argument("--k: disagrees with the " +
                             std::to_string(opt.gammas.size()) +
                             " shifts in --gammas; omit --k to infer it");
    k = static_cast<int>(opt.gammas.size());
  }
  if (k < 1 || k > n - 1)
    throw invalid_argument("--k: must lie in [1, n-1] = [1, " + std::to_string(n - 1) +
                           "] for this graph, got " + std::to_string(k));

  double epsilon = opt.epsilon;
  if (epsilon <= 0.0) {
    if (opt.epsilon == -1.0) {
      epsilon = opt.method == "push" ? 1e-6 : 1e-4;
    } else {
      throw invalid_argument("--epsilon: must be positive, got " + fmt17(opt.epsilon));
    }
  }

  ordered_json params;
  params["graph"] = opt.graph_path;
  params.update(seed_params(opt.seed));
  params["method"] = opt.method;
  params["k"] = k;
  params["epsilon"] = epsilon;
  params["rng_seed"] = opt.rng_seed;
  params["out"] = opt.out;

  SsEigenSolution sol;
  ordered_json results;

  if (opt.method == "push") {
    if (!opt.kappa.empty())
      throw invalid_argument(
          "--kappa: the push method cannot run a correlation-target search; its "
          "teleportation reaches only shifts gamma in (-inf, 0), so correlations "
          "requiring gamma >= 0 are out of range. Pass explicit negative shifts "
          "with --gammas instead.");
    if (opt.gammas.empty())
      throw invalid_argument(
          "--gammas: required for --method push; give comma-separated shifts in "
          "(-inf, 0)");
    for (double gamma : opt.gammas)
      if (!(gamma < 0.0))
        throw invalid_argument(
            "--gammas: push shifts must be strictly negative (valid range "
            "(-inf, 0)), got " +
            fmt17(gamma));
    params["gammas"] = opt.gammas;

    PushRunResult run = push_peel_run(g, seed, opt.gammas, epsilon);
    sol.vectors = run.vectors;
    sol.gammas = run.gammas;
    sol.correlations = run.correlations;
    sol.warnings = run.warnings;
    sol.wall_seconds = run.wall_seconds;
    for (std::size_t t = 0; t < run.gammas.size(); ++t) sol.diagnostics.emplace_back();
    results["gammas"] = run.gammas;
    results["alpha_primes"] = run.alpha_primes;
    results["correlations"] = run.correlations;
    results["pushes"] = run.pushes;
    results["touched"] = run.touched;
    results["warnings"] = run.warnings;
  } else {
    SolverConfig cfg;
    cfg.k = k;
    cfg.epsilon = epsilon;
    cfg.max_bisections = opt.max_bisections;
    cfg.cg_tol = opt.cg_tol;
    cfg.lanczos_tol = opt.lanczos_tol;
    cfg.eager_bounds = opt.eager_bounds;
    cfg.rng_seed = opt.rng_seed;
    params["max_bisections"] = opt.max_bisections;
    params["cg_tol"] = opt.cg_tol;
    params["lanczos_tol"] = opt.lanczos_tol;
    params["eager_bounds"] = opt.eager_bounds;

    if (!opt.gammas.empty()) {
      params["gammas"] = opt.gammas;
    } else {
      if (opt.kappa.empty())
        throw invalid_argument(
            "--kappa: required for --method " + opt.method +
            " (one value in [0, 1], or k comma-separated values summing to at most 1)");
      cfg.kappa = resolve_kappa(opt.kappa, k);
      params["kappa"] = cfg.kappa;
    }

    if (opt.method == "exact") {
      sol = opt.gammas.empty() ? solve(g, seed, cfg)
                               : solve_fixed_gammas(g, seed, opt.gammas, cfg);
    } else {
      NystromModel model;
      if (!opt.model_in.empty()) {
        model = load_nystrom(opt.model_in);
        if (model.graph_digest != g.digest())
          throw invalid_argument(
              "--model-in: model was built for a different graph (digest " +
              hex_digest(model.graph_digest) + ", expected " + hex_digest(g.digest()) +
              ")");
        params["model_in"] = opt.model_in;
      } else {
        if (opt.landmarks < 1 || opt.landmarks > n)
          throw invalid_argument("--landmarks: required for --method nystrom, in "
                                 "[1, n] = [1, " +
                                 std::to_string(n) + "], got " +
                                 std::to_string(opt.landmarks));
        model = build_nystrom(g, opt.landmarks, opt.rng_seed);
      }
      params["landmarks"] = static_cast<long long>(model.sample_indices.size());
      for (const auto& w : model.warnings) log << "note: " << w << '\n';
      if (!opt.model_out.empty()) {
        save_nystrom(model, opt.model_out);
        params["model_out"] = opt.model_out;
        log << "wrote model " << opt.model_out << '\n';
      }
      results["model_rank"] = model.lambda.size();
      results["discarded_mass"] = model.discarded_mass;
      results["model_warnings"] = model.warnings;
      sol = opt.gammas.empty() ? solve_nystrom(g, model, seed, cfg)
                               : nystrom_fixed_gammas(g, model, seed, opt.gammas);
    }
    results.update(diagnostics_json(sol));
  }

  ordered_json manifest = manifest_skeleton("solve");
  manifest["parameters"] = params;
  manifest["graph"] = graph_summary(g);
  manifest["rng_seeds"] = ordered_json{{"solver", opt.rng_seed}};
  manifest["results"] = results;
  manifest["timings"] =
      ordered_json{{"read_seconds", read_seconds},
                   {"solve_seconds", sol.wall_seconds},
                   {"total_seconds", seconds_since(start)}};

  std::string sidecar = write_vectors(opt.out, sol.vectors, manifest.dump(2) + "\n");
  log_solution(sol, log);
  log << "wrote " << opt.out << " and " << sidecar << '\n';
  return 0;
}

namespace {

struct CheckAccumulator {
  ordered_json rows = ordered_json::array();
  long long failed = 0;

  void add(const std::string& suite, const std::string& name, int trial,
           double observed, double threshold, bool passed) {
    rows.push_back(ordered_json{{"suite", suite},
                                {"name", name},
                                {"trial", trial},
                                {"observed", observed},
                                {"threshold", threshold},
                                {"passed", passed}});
    if (!passed) ++failed;
  }
};

// Symmetry defect x^T A y - y^T A x over random unit probes. The injected
// mode bumps one direction of the (0, 1) edge only, so the probe pair must
// report a failure; with it the command exits nonzero by design.
void symmetry_suite(const Graph& g, bool inject, int trial, std::uint64_t seed,
                    CheckAccumulator& acc) {
  Eigen::MatrixXd a = dense_adjacency(g);
  std::string name = "adjacency_probe";
  if (inject) {
    a(0, 1) += 0.5 * a(0, 1) + 0.1;
    name = "adjacency_probe_injected";
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Eigen::Index n = g.node_count();
  Eigen::VectorXd x(n), y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x[i] = gauss(rng);
    y[i] = gauss(rng);
  }
  x.normalize();
  y.normalize();
  double defect = std::abs(x.dot(a * y) - y.dot(a * x)) / std::max(1.0, a.norm());
  acc.add("operator_symmetry", name, trial, defect, 1e-12, defect <= 1e-12);
}

void oracle_suite(int size, int trial, std::mt19937_64& seq, CheckAccumulator& acc) {
  Graph g = random_connected_graph(size, 0.2, seq());
  const Eigen::Index n = g.node_count();
  std::vector<std::pair<Eigen::Index, double>> support;
  Eigen::Index s0 = static_cast<Eigen::Index>(seq() % static_cast<std::uint64_t>(n));
  support.emplace_back(s0, 1.0);
  if (seq() % 2 == 0) support.emplace_back((s0 + 1 + seq() % (n - 1)) % n, 0.7);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end(),
                            [](auto& l, auto& r) { return l.first == r.first; }),
                support.end());
  SeedVector seed = embed_seed(g, support);

  ProjectionBasis basis(g);
  UpperBound ub = compute_upper_bound(g, basis, 1e-12, 10000, seq());
  double lo = -g.volume();
  double margin = 0.05 * (ub.gamma_top - lo);
  std::uniform_real_distribution<double> unif(lo + margin, ub.gamma_top - margin);
  double gamma = unif(seq);

  GammaSolve gs = solve_at_gamma(g, basis, seed.embedded, gamma, 1e-13,
                                 static_cast<int>(40 * n));
  Eigen::VectorXd oracle = dense_oracle_solve(g, basis, seed.embedded, gamma);
  if (g.dot_d(gs.x, oracle) < 0.0) oracle = -oracle;
  double err = g.norm_d(gs.x - oracle);
  acc.add("oracle_equivalence", "projected_solve_matches_dense", trial, err, 1e-6,
          err <= 1e-6);

  symmetry_suite(g, false, trial, seq(), acc);
}

void push_suite(int size, int trial, std::mt19937_64& seq, CheckAccumulator& acc) {
  int psize = std::min(size, 50);
  Graph g = random_connected_graph(psize, 0.2, seq());
  const Eigen::Index n = g.node_count();
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(n);
  mass[static_cast<Eigen::Index>(seq() % static_cast<std::uint64_t>(n))] = 1.0;
  std::uniform_real_distribution<double> adist(0.05, 0.6);
  PushConfig cfg;
  cfg.alpha_prime = adist(seq);
  cfg.epsilon = 1e-5;
  PushState st = push_pagerank(g, mass, cfg);

  Eigen::VectorXd d = g.degrees();
  double resid = (st.r.array() / d.array()).maxCoeff();
  acc.add("push_invariant", "termination_residual", trial, resid, cfg.epsilon,
          resid < cfg.epsilon);

  Eigen::MatrixXd a = dense_adjacency(g);
  Eigen::MatrixXd walk =
      0.5 * (Eigen::MatrixXd::Identity(n, n) + a * d.cwiseInverse().asDiagonal());
  Eigen::MatrixXd m =
      Eigen::MatrixXd::Identity(n, n) - (1.0 - cfg.alpha_prime) * walk;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  Eigen::VectorXd pr_r = cfg.alpha_prime * lu.solve(st.r);
  Eigen::VectorXd pr_s = cfg.alpha_prime * lu.solve(mass);
  double inv_err =
      (st.p + pr_r - pr_s).lpNorm<Eigen::Infinity>();
  acc.add("push_invariant", "linear_invariant_final_state", trial, inv_err, 1e-10,
          inv_err <= 1e-10);
}

void solver_suite(int size, int trial, std::mt19937_64& seq, CheckAccumulator& acc) {
  Graph g = random_connected_graph(size, 0.2, seq());
  const Eigen::Index n = g.node_count();
  std::vector<std::pair<Eigen::Index, double>> support;
  support.emplace_back(static_cast<Eigen::Index>(seq() % static_cast<std::uint64_t>(n)),
                       1.0);
  SeedVector seed = embed_seed(g, support);
  SolverConfig cfg;
  cfg.k = 2;
  cfg.kappa = {0.1, 0.1};
  cfg.epsilon = 1e-5;
  cfg.eager_bounds = true;
  cfg.rng_seed = seq();
  SsEigenSolution sol = solve(g, seed, cfg);

  Eigen::MatrixXd gram =
      sol.vectors.transpose() * g.degrees().asDiagonal() * sol.vectors;
  double ortho = (gram - Eigen::MatrixXd::Identity(cfg.k, cfg.k))
                     .cwiseAbs()
                     .maxCoeff();
  acc.add("solver", "degree_orthonormality", trial, ortho, 1e-6, ortho <= 1e-6);

  double budget = 0.0;
  for (double c : sol.correlations) budget += c;
  acc.add("solver", "correlation_budget", trial, budget, 1.0 + 1e-8,
          budget <= 1.0 + 1e-8);

  // Feasible tops may only move up as the basis grows.
  double drop = 0.0;
  for (std::size_t t = 1; t < sol.upper_bounds.size(); ++t)
    if (std::isfinite(sol.upper_bounds[t]) && std::isfinite(sol.upper_bounds[t - 1]))
      drop = std::max(drop, sol.upper_bounds[t - 1] - sol.upper_bounds[t]);
  acc.add("solver", "upper_bound_monotone", trial, drop, 1e-10, drop <= 1e-10);
}

}  // namespace

int cmd_validate(const ValidateOptions& opt, std::ostream& log) {
  auto start = clock_type::now();
  if (opt.size_limit < 10 || opt.size_limit > kDenseOracleMaxNodes)
    throw invalid_argument("--size-limit: must lie in [10, " +
                           std::to_string(kDenseOracleMaxNodes) + "], got " +
                           std::to_string(opt.size_limit));
  if (opt.trials < 0)
    throw invalid_argument("--trials: must be nonnegative, got " +
                           std::to_string(opt.trials));

  CheckAccumulator acc;
  std::mt19937_64 seq(opt.rng_seed);
  for (int trial = 0; trial < opt.trials; ++trial) {
    int size = 10 + static_cast<int>(seq() % static_cast<std::uint64_t>(
                                         opt.size_limit - 10 + 1));
    LemmaReport lemmas = lemma_identities_check(size, seq());
    for (const auto& c : lemmas.checks)
      acc.add("lemma_identities", c.name, trial, c.observed, c.threshold, c.passed);
    oracle_suite(size, trial, seq, acc);
    push_suite(size, trial, seq, acc);
    solver_suite(size, trial, seq, acc);
    if (opt.inject_asymmetry) {
      Graph g = random_connected_graph(size, 0.2, seq());
      symmetry_suite(g, true, trial, seq(), acc);
    }
  }

  bool all_passed = acc.failed == 0;
  ordered_json report = manifest_skeleton("validate");
  report["parameters"] = ordered_json{{"size_limit", opt.size_limit},
                                      {"trials", opt.trials},
                                      {"rng_seed", opt.rng_seed},
                                      {"inject_asymmetry", opt.inject_asymmetry}};
  report["rng_seeds"] = ordered_json{{"root", opt.rng_seed}};
  report["checks"] = acc.rows;
  report["summary"] = ordered_json{{"total", acc.rows.size()},
                                   {"failed", acc.failed},
                                   {"all_passed", all_passed}};
  report["timings"] = ordered_json{{"total_seconds", seconds_since(start)}};
  write_json_file(opt.report_path, report);

  log << "validation: " << acc.rows.size() << " checks, " << acc.failed
      << " failed; report at " << opt.report_path << '\n';
  return all_passed ? 0 : 1;
}

int cmd_profile(const ProfileOptions& opt, std::ostream& log) {
  auto start = clock_type::now();
  if (opt.graph_path.empty())
    throw invalid_argument("--graph: a graph file is required");
  if (opt.alphas.empty())
    throw invalid_argument("--alphas: at least one teleportation value is required");
  for (double a : opt.alphas)
    if (!(a > 0.0 && a <= 1.0))
      throw invalid_argument("--alphas: teleportation values must lie in (0, 1], got " +
                             fmt17(a));
  if (opt.epsilons.empty())
    throw invalid_argument("--epsilons: at least one push threshold is required");
  for (double e : opt.epsilons)
    if (!(e > 0.0))
      throw invalid_argument("--epsilons: thresholds must be positive, got " + fmt17(e));
  if (opt.baseline_cap < 0)
    throw invalid_argument("--baseline-cap: must be nonnegative, got " +
                           std::to_string(opt.baseline_cap));

  Graph g = read_graph_logged(opt.graph_path, log);
  const Eigen::Index n = g.node_count();
  SeedVector seed = resolve_seed(g, opt.seed);

  std::vector<ProfileRow> rows =
      correlation_decay_profile(g, seed, opt.alphas, opt.epsilons);

  bool with_baseline = n <= opt.baseline_cap;
  if (!with_baseline)
    log << "baseline skipped: graph has " << n << " nodes, above --baseline-cap "
        << opt.baseline_cap << "; reporting absolute timings only\n";

  // The exact baseline depends on alpha only, so time it once per teleport.
  std::vector<double> baseline_seconds(opt.alphas.size(),
                                       std::numeric_limits<double>::quiet_NaN());
  if (with_baseline) {
    ProjectionBasis basis(g);
    for (std::size_t i = 0; i < opt.alphas.size(); ++i) {
      double ap = alpha_to_alpha_prime(opt.alphas[i]);
      if (ap >= 1.0) continue;  // gamma -> -inf has no finite-shift baseline
      double gamma = alpha_prime_to_gamma(ap);
      auto t0 = clock_type::now();
      solve_at_gamma(g, basis, seed.embedded, gamma, opt.baseline_cg_tol);
      baseline_seconds[i] = seconds_since(t0);
    }
  }

  std::ofstream out(opt.out, std::ios::binary);
  if (!out) throw io_error("--out: cannot open '" + opt.out + "' for writing");
  out << "alpha,epsilon,correlation,touched,seconds";
  if (with_baseline) out << ",baseline_seconds,speedup";
  out << '\n';
  for (const auto& row : rows) {
    out << fmt17(row.alpha) << ',' << fmt17(row.epsilon) << ','
        << fmt17(row.correlation) << ',' << row.touched << ',' << fmt17(row.seconds);
    if (with_baseline) {
      std::size_t i = 0;
      while (i < opt.alphas.size() && opt.alphas[i] != row.alpha) ++i;
      double base = i < opt.alphas.size()
                        ? baseline_seconds[i]
                        : std::numeric_limits<double>::quiet_NaN();
      if (std::isfinite(base)) {
        out << ',' << fmt17(base) << ','
            << fmt17(base / std::max(row.seconds, 1e-12));
      } else {
        out << ",,";
      }
    }
    out << '\n';
  }
  if (!out) throw io_error("--out: failed while writing '" + opt.out + "'");
  out.close();

  ordered_json manifest = manifest_skeleton("profile");
  ordered_json params;
  params["graph"] = opt.graph_path;
  params.update(seed_params(opt.seed));
  params["alphas"] = opt.alphas;
  params["epsilons"] = opt.epsilons;
  params["baseline_cap"] = opt.baseline_cap;
  params["baseline_cg_tol"] = opt.baseline_cg_tol;
  params["out"] = opt.out;
  manifest["parameters"] = params;
  manifest["graph"] = graph_summary(g);
  manifest["rng_seeds"] = ordered_json::object();
  manifest["timings"] = ordered_json{{"total_seconds", seconds_since(start)}};
  write_json_file(opt.out + ".manifest.json", manifest);

  log << "wrote " << opt.out << " (" << rows.size() << " rows"
      << (with_baseline ? ", with exact baseline" : "") << ")\n";
  return 0;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"semi-supervised eigenvectors of graph Laplacians"};
  app.name("sseig");
  app.set_version_flag("--version", std::string("sseig ") + kVersion);
  app.require_subcommand(1);

  GenerateOptions gopt;
  SolveOptions sopt;
  ValidateOptions vopt;
  ProfileOptions popt;

  auto* gen = app.add_subcommand("generate", "write a synthetic graph edge list");
  gen->require_subcommand(1);
  auto* ring = gen->add_subcommand("ring", "Watts-Strogatz ring lattice");
  ring->add_option("--n", gopt.n, "number of nodes (>= 3)")->required();
  ring->add_option("--z", gopt.z, "lattice neighbors per node (even, < n)")
      ->required();
  ring->add_option("--p", gopt.p, "rewiring probability in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  ring->add_option("--seed", gopt.seed, "rewiring rng seed");
  auto* grid = gen->add_subcommand("grid", "rows x cols 4-neighbor grid");
  grid->add_option("--rows", gopt.rows, "grid rows (>= 1)")->required();
  grid->add_option("--cols", gopt.cols, "grid columns (>= 1)")->required();
  auto* knn = gen->add_subcommand("knn", "symmetrized k-nearest-neighbor graph");
  knn->add_option("--points", gopt.points_path, "CSV of point coordinates, one row per point")
      ->required();
  knn->add_option("--neighbors", gopt.neighbors, "neighbors per point (>= 1)")
      ->required();
  for (auto* sub : {ring, grid, knn})
    sub->add_option("--out", gopt.out, "output edge-list path");

  auto* solve_cmd =
      app.add_subcommand("solve", "compute semi-supervised eigenvectors");
  solve_cmd->add_option("--graph", sopt.graph_path, "input graph file")->required();
  solve_cmd->add_option("--seed-node", sopt.seed.nodes,
                        "seed node ids, comma separated")
      ->delimiter(',');
  solve_cmd->add_option("--seed-file", sopt.seed.file,
                        "weighted seed file with 'node weight' lines");
  solve_cmd->add_option("--method", sopt.method, "exact | nystrom | push");
  solve_cmd->add_option("--k", sopt.k, "number of vectors");
  solve_cmd
      ->add_option("--kappa", sopt.kappa,
                   "squared seed correlation target: one value or k comma-separated")
      ->delimiter(',');
  solve_cmd
      ->add_option("--gammas", sopt.gammas,
                   "fixed shifts, comma separated; skips the correlation search")
      ->delimiter(',');
  solve_cmd->add_option("--epsilon", sopt.epsilon,
                        "correlation tolerance (exact/nystrom) or push residual "
                        "threshold");
  solve_cmd->add_option("--max-bisections", sopt.max_bisections,
                        "bisection step limit")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--cg-tol", sopt.cg_tol, "conjugate gradient tolerance");
  solve_cmd->add_option("--lanczos-tol", sopt.lanczos_tol,
                        "eigenvalue bound tolerance");
  solve_cmd->add_flag("--eager-bounds", sopt.eager_bounds,
                      "recompute the feasible top every step");
  solve_cmd->add_option("--landmarks,-m", sopt.landmarks,
                        "nystrom sample size (required unless --model-in)");
  solve_cmd->add_option("--model-in", sopt.model_in, "load a saved nystrom model");
  solve_cmd->add_option("--model-out", sopt.model_out,
                        "save the nystrom model for reuse");
  solve_cmd->add_option("--rng-seed", sopt.rng_seed, "seed for all randomized pieces");
  solve_cmd->add_option("--out", sopt.out, "output vectors CSV path");

  auto* validate =
      app.add_subcommand("validate", "run the identity and oracle check suites");
  validate->add_option("--size-limit", vopt.size_limit,
                       "largest random test graph, in [10, 200]");
  validate->add_option("--trials", vopt.trials, "independent trials (0 for none)");
  validate->add_option("--seed", vopt.rng_seed, "rng seed for the suites");
  validate->add_option("--report", vopt.report_path, "JSON report path");
  validate
      ->add_flag("--inject-asymmetry", vopt.inject_asymmetry,
                 "negative control: perturb one weight one-sided and expect the "
                 "symmetry check to flag it")
      ->group("");  // hidden: test hook

  auto* profile = app.add_subcommand(
      "profile", "sweep the push path over teleportation and threshold grids");
  profile->add_option("--graph", popt.graph_path, "input graph file")->required();
  profile->add_option("--seed-node", popt.seed.nodes, "seed node ids, comma separated")
      ->delimiter(',');
  profile->add_option("--seed-file", popt.seed.file,
                      "weighted seed file with 'node weight' lines");
  profile->add_option("--alphas", popt.alphas, "teleportation grid, values in (0, 1]")
      ->delimiter(',');
  profile->add_option("--epsilons", popt.epsilons, "push threshold list")
      ->delimiter(',');
  profile->add_option("--baseline-cap", popt.baseline_cap,
                      "largest node count that still times the exact baseline");
  profile->add_option("--baseline-cg-tol", popt.baseline_cg_tol,
                      "conjugate gradient tolerance for the baseline");
  profile->add_option("--out", popt.out, "output CSV path");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("sseig");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      gopt.kind = ring->parsed() ? "ring" : grid->parsed() ? "grid" : "knn";
      return cmd_generate(gopt, out);
    }
    if (solve_cmd->parsed()) return cmd_solve(sopt, out);
    if (validate->parsed()) return cmd_validate(vopt, out);
    if (profile->parsed()) return cmd_profile(popt, out);
    err << "error: no command given\n";
    return 1;
  } catch (const invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const numerical_error& e) {
    err << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const io_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace sseig
