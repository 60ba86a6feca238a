#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ritzlag {

/// Thrown when a system would have at least as many boundary equations as
/// trial coefficients (N_tot <= s_tot).
class DegenerateConfigError : public std::runtime_error {
 public:
  DegenerateConfigError(std::size_t n_total, std::size_t s_total)
      : std::runtime_error("degenerate configuration: N_tot = " + std::to_string(n_total) +
                           " must exceed s_tot = " + std::to_string(s_total) +
                           " (take many more trial functions than boundary weights)"),
        n_total(n_total),
        s_total(s_total) {}
  std::size_t n_total;
  std::size_t s_total;
};

/// Thrown when the constraint matrix L does not have full row rank.
class ConstraintRankError : public std::runtime_error {
 public:
  ConstraintRankError(std::string what, std::vector<int> rows)
      : std::runtime_error(std::move(what)), deficient_rows(std::move(rows)) {}
  std::vector<int> deficient_rows;
};

/// Thrown when a direct factorization meets a numerically singular matrix.
class SingularSystemError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when the projected mass matrix is not positive definite.
class MassDegenerateError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an error metric is undefined (zero reference deflection).
class MetricError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ritzlag
