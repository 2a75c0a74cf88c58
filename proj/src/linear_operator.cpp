#include "sseig/linear_operator.hpp"

#include <cmath>
#include <random>
#include <string>

#include "sseig/errors.hpp"

namespace sseig {

Eigen::VectorXd LinearOperator::operator()(const Eigen::VectorXd& x) const {
  if (x.size() != dim_)
    throw invalid_argument("operator of dimension " + std::to_string(dim_) +
                           " applied to vector of size " + std::to_string(x.size()));
  Eigen::VectorXd y = apply_(x);
  if (y.size() != dim_)
    throw numerical_error("operator apply returned wrong dimension");
  return y;
}

double LinearOperator::symmetry_defect(std::uint64_t rng_seed, int probes) const {
  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&] {
    Eigen::VectorXd v(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) v[i] = gauss(rng);
    return v;
  };
  double worst = 0.0;
  for (int t = 0; t < probes; ++t) {
    Eigen::VectorXd u = draw(), v = draw();
    Eigen::VectorXd au = (*this)(u), av = (*this)(v);
    double scale = au.norm() * v.norm() + av.norm() * u.norm();
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(u.dot(av) - v.dot(au)) / scale);
  }
  return worst;
}

}  // namespace sseig
