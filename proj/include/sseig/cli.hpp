#ifndef SSEIG_CLI_HPP
#define SSEIG_CLI_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sseig {

// Options structs mirror the command-line flags one to one so the commands
// can be driven from tests without spawning a process. Every precondition
// failure raises invalid_argument naming the flag and its valid range.

struct GenerateOptions {
  std::string kind;  // ring | grid | knn
  // ring
  Eigen::Index n = 0;
  int z = 0;
  double p = 0.0;
  std::uint64_t seed = 1;
  // grid
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  // knn
  std::string points_path;
  int neighbors = 0;
  std::string out = "graph.edges";
};

// Seed nodes either inline (unit weights) or from a "node weight" file.
struct SeedSpec {
  std::vector<Eigen::Index> nodes;
  std::string file;
};

struct SolveOptions {
  std::string graph_path;
  SeedSpec seed;
  std::string method = "exact";  // exact | nystrom | push
  int k = 1;
  std::vector<double> kappa;   // one value (split evenly) or one per vector
  std::vector<double> gammas;  // fixed-shift mode; the only mode for push
  double epsilon = -1.0;       // <0 picks the per-method default
  int max_bisections = 60;
  double cg_tol = 1e-8;
  double lanczos_tol = 1e-10;
  bool eager_bounds = false;
  Eigen::Index landmarks = 0;  // nystrom sample size m
  std::string model_in;
  std::string model_out;
  std::uint64_t rng_seed = 12345;
  std::string out = "vectors.csv";
};

struct ValidateOptions {
  Eigen::Index size_limit = 40;  // largest random graph, in [10, 200]
  int trials = 10;
  std::uint64_t rng_seed = 777;
  std::string report_path = "validation.json";
  // Negative control: evaluates the symmetry suite against an operator with
  // one edge weight bumped on one side only, which must be flagged.
  bool inject_asymmetry = false;
};

struct ProfileOptions {
  std::string graph_path;
  SeedSpec seed;
  std::vector<double> alphas = {0.99, 0.9, 0.5, 0.2, 0.1, 0.05, 0.01};
  std::vector<double> epsilons = {1e-4};
  // Exact-solver baseline timings are produced only up to this many nodes;
  // larger graphs report absolute diffusion timings with a notice.
  Eigen::Index baseline_cap = 2000;
  double baseline_cg_tol = 1e-6;
  std::string out = "profile.csv";
};

// Each command returns a process exit code (0 on success) and reports
// progress on `log`. Library failures propagate as exceptions; run_cli maps
// them to exit codes. cmd_validate returns 1 when any check fails: failed
// checks are report content, not exceptions.
int cmd_generate(const GenerateOptions& opt, std::ostream& log);
int cmd_solve(const SolveOptions& opt, std::ostream& log);
int cmd_validate(const ValidateOptions& opt, std::ostream& log);
int cmd_profile(const ProfileOptions& opt, std::ostream& log);

// Full command line without the program name. Parses flags, dispatches, and
// maps errors to exit codes: 0 ok, 1 usage, 2 numerical failure, 3 I/O.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace sseig

#endif
