#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace abslee {

/// Perturbation state (rho', u', v', p') of the linearized Euler equations.
using State4 = Eigen::Vector4d;
using Matrix4 = Eigen::Matrix4d;
using Vec2 = Eigen::Vector2d;

// Component slots inside a State4.
inline constexpr int kRho = 0;
inline constexpr int kU = 1;
inline constexpr int kV = 2;
inline constexpr int kP = 3;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Structurally well-formed data that violates an invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure during time marching (NaN, singular data, ...).
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace abslee
