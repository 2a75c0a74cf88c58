#ifndef SSEIG_LINEAR_OPERATOR_HPP
#define SSEIG_LINEAR_OPERATOR_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <utility>

namespace sseig {

// Matrix-free square operator. The symmetric flag is a declaration by the
// builder; symmetry_defect provides a randomized spot check for validation.
class LinearOperator {
 public:
  using ApplyFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

  LinearOperator(Eigen::Index dim, bool symmetric, ApplyFn apply)
      : dim_(dim), symmetric_(symmetric), apply_(std::move(apply)) {}

  Eigen::Index dim() const { return dim_; }
  bool symmetric() const { return symmetric_; }

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;

  // max over probe pairs (u,v) of |u^T A v - v^T A u| / (||Au|| ||v|| + ||Av|| ||u||).
  double symmetry_defect(std::uint64_t rng_seed, int probes = 4) const;

 private:
  Eigen::Index dim_;
  bool symmetric_;
  ApplyFn apply_;
};

}  // namespace sseig

#endif
