#pragma once

#include <cstdint>
#include <string>

#include "rhmc/types.hpp"

namespace rhmc {

/// A full-dimensional polytope {x : Ax >= b} with m >= n constraints.
///
/// Construction guarantees three invariants: A has full column rank
/// (checked with a column-pivoted QR at relative tolerance 1e-10), no row
/// of A is zero, and the strict interior {Ax > b} is nonempty (witnessed
/// by a stored interior point). Degenerate input fails here, never at
/// sample time. Instances are immutable and safe to share across threads.
class Polytope {
 public:
  /// Build from raw data. Finds an interior witness by phase-I damped
  /// Newton on a relaxed log barrier when none is supplied.
  static Polytope from_data(Matrix A, Vector b);
  static Polytope from_data(Matrix A, Vector b, Vector interior_witness);

  /// Text format: first non-comment line "m n", then m lines of n+1 reals
  /// "a_i1 ... a_in b_i". Lines starting with '#' are comments.
  static Polytope parse(const std::string& text);

  /// [lo, hi]^n as 2n half-spaces (rows e_k, -e_k per axis).
  static Polytope hypercube(Index n, double lo, double hi);

  /// {x >= 0, sum x <= 1} with n+1 constraints.
  static Polytope simplex(Index n);

  /// m rows drawn uniformly on the unit sphere, b = -1, so the unit ball
  /// is inscribed and the origin is interior with slack exactly 1.
  static Polytope random(Index n, Index m, std::uint64_t seed);

  /// s = Ax - b. Negative entries are returned, not rejected.
  Vector slacks(const Vector& x) const;

  /// true iff min_i s_i(x) > margin.
  bool contains_strictly(const Vector& x, double margin = 0.0) const;

  /// Minimizer of the log barrier phi(x) = -sum log s_i, solved by damped
  /// Newton to local gradient norm <= 1e-8.
  Vector analytic_center() const;

  const Matrix& constraint_matrix() const { return A_; }
  const Vector& offsets() const { return b_; }
  const Vector& interior_point() const { return interior_; }
  Index num_constraints() const { return A_.rows(); }
  Index dim() const { return A_.cols(); }

 private:
  Polytope(Matrix A, Vector b, Vector interior);

  Matrix A_;
  Vector b_;
  Vector interior_;
};

}  // namespace rhmc
