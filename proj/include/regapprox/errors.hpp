#pragma once

#include <stdexcept>
#include <string>

namespace regapprox {

/// Malformed input: bad literals, wrong arity, indices out of range.
/// The CLI maps these to exit code 1.
class InvalidArgument : public std::invalid_argument {
 public:
  InvalidArgument(std::string parameter, const std::string& what)
      : std::invalid_argument(parameter + ": " + what), parameter_(std::move(parameter)) {}

  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

/// The mathematics refused: no dominant root, zero denominators everywhere,
/// roots that cannot be separated. The CLI maps these to exit code 2.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace regapprox
