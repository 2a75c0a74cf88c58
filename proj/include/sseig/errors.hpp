#ifndef SSEIG_ERRORS_HPP
#define SSEIG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sseig {

// Bad arguments or precondition violations (CLI maps these to exit code 1).
class invalid_argument : public std::invalid_argument {
 public:
  explicit invalid_argument(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical breakdowns: divergence, poles, ill-posed systems (exit code 2).
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// File and parse failures (exit code 3).
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sseig

#endif
