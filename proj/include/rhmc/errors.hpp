#pragma once

#include <stdexcept>
#include <string>

namespace rhmc {

/// Malformed polytope text (bad header, wrong entry count, zero row, ...).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Constraint matrix has column rank < n.
struct RankDeficient : std::runtime_error {
  explicit RankDeficient(const std::string& what) : std::runtime_error(what) {}
};

/// No strictly interior point could be certified at construction.
struct InfeasibleInterior : std::runtime_error {
  explicit InfeasibleInterior(const std::string& what) : std::runtime_error(what) {}
};

/// Damped Newton failed to reach a strictly interior stationary point.
struct NoInteriorPoint : std::runtime_error {
  explicit NoInteriorPoint(const std::string& what) : std::runtime_error(what) {}
};

/// Generator called with an unusable dimension/count combination.
struct InvalidDimension : std::invalid_argument {
  explicit InvalidDimension(const std::string& what) : std::invalid_argument(what) {}
};

/// Point has a nonpositive (or numerically vanishing) slack.
struct NotInterior : std::runtime_error {
  explicit NotInterior(const std::string& what) : std::runtime_error(what) {}
};

/// Cholesky breakdown of the metric; signals a near-degenerate point.
struct FactorizationFailure : std::runtime_error {
  explicit FactorizationFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Implicit stage left the polytope or failed to converge in the
/// iteration budget. The sampler absorbs this as a rejection.
struct FixedPointDivergence : std::runtime_error {
  explicit FixedPointDivergence(const std::string& what) : std::runtime_error(what) {}
};

/// Reference integrator failed its Richardson self-check.
struct OracleNotConverged : std::runtime_error {
  explicit OracleNotConverged(const std::string& what) : std::runtime_error(what) {}
};

/// Statistical routine called with too few samples.
struct InsufficientSamples : std::runtime_error {
  explicit InsufficientSamples(const std::string& what) : std::runtime_error(what) {}
};

/// Input outside the mathematical domain of a diagnostic formula.
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace rhmc
