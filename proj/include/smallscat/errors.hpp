#pragma once

#include <stdexcept>
#include <string>

namespace smallscat {

/// Invalid scenario input: malformed config, bad mesh, overlapping obstacles.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical breakdown: near-singular system, residual out of contract.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// The interaction system could not be inverted reliably.
class InvertibilityError : public NumericalError {
public:
  explicit InvertibilityError(const std::string& what) : NumericalError(what) {}
};

}  // namespace smallscat
