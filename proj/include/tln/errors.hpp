#pragma once

#include <stdexcept>
#include <string>

namespace tln {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IndexError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input sits exactly on a classification wall: some determinant the
/// operation has to sign is zero. Reported, never perturbed away.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation is only defined for a restricted dimension (n = 3 tables).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Numerical integration produced NaN or blew up.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tln
