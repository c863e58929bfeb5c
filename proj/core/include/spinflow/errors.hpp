#ifndef SPINFLOW_ERRORS_HPP
#define SPINFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spinflow {

/// Rejected input: bad quantum numbers, inconsistent dimensions, invalid
/// parameter ranges. Maps to CLI exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation failed or an internal consistency check was violated
/// (eigensolver failure, dual-route disagreement). Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spinflow

#endif
