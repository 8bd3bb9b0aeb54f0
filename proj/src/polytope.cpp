#include "rhmc/polytope.hpp"

#include <Eigen/QR>
#include <cmath>
#include <sstream>
#include <vector>

#include "rhmc/errors.hpp"
#include "rhmc/rng.hpp"

namespace rhmc {
namespace {

// Damped Newton on phi(x) = -sum log(a_i^T x - b_i + relax). Returns the
// final iterate; `converged` reports whether the local gradient norm
// reached `tol`. The damped step stays inside the Dikin ellipsoid, so
// every iterate keeps s + relax > 0.
struct NewtonResult {
  Vector x;
  bool converged = false;
};

NewtonResult barrier_newton(const Matrix& A, const Vector& b, Vector x,
                            double relax, double tol, int max_iters) {
  const Index m = A.rows();
  NewtonResult out{std::move(x), false};
  for (int it = 0; it < max_iters; ++it) {
    Vector s = A * out.x - b;
    s.array() += relax;
    if (s.minCoeff() <= 0.0) return out;  // caller guarded; bail defensively
    const Vector inv_s = s.cwiseInverse();
    const Matrix Ax = inv_s.asDiagonal() * A;
    const Vector grad = -Ax.transpose() * Vector::Ones(m);
    const Matrix hess = Ax.transpose() * Ax;
    Eigen::LLT<Matrix> llt(hess);
    if (llt.info() != Eigen::Success) return out;
    const Vector step = -llt.solve(grad);
    const double decrement = std::sqrt(std::max(0.0, -grad.dot(step)));
    if (decrement <= tol) {
      out.converged = true;
      return out;
    }
    const double damping = decrement > 0.25 ? 1.0 / (1.0 + decrement) : 1.0;
    out.x += damping * step;
  }
  // Accept a final iterate that meets the tolerance exactly at the budget.
  Vector s = A * out.x - b;
  s.array() += relax;
  if (s.minCoeff() > 0.0) {
    const Vector inv_s = s.cwiseInverse();
    const Matrix Ax = inv_s.asDiagonal() * A;
    const Vector grad = -Ax.transpose() * Vector::Ones(m);
    Eigen::LLT<Matrix> llt(Matrix(Ax.transpose() * Ax));
    if (llt.info() == Eigen::Success) {
      const Vector step = llt.solve(grad);
      out.converged = std::sqrt(std::max(0.0, grad.dot(step))) <= tol;
    }
  }
  return out;
}

// Phase-I: center the relaxed polytope {Ax >= b - relax} and shrink the
// relaxation until the original slacks are strictly positive.
Vector find_interior(const Matrix& A, const Vector& b) {
  // Least-squares target Ax = b + 1 is often already interior.
  Vector x = A.colPivHouseholderQr().solve(b + Vector::Ones(A.rows()));
  Vector s = A * x - b;
  if (s.minCoeff() > 0.0) return x;

  double relax = 1.0 - s.minCoeff();
  for (int round = 0; round < 256; ++round) {
    x = barrier_newton(A, b, x, relax, 1e-10, 200).x;
    s = A * x - b;
    const double min_slack = s.minCoeff();
    if (min_slack > 0.0) return x;
    const double next = std::max(relax / 4.0, -min_slack * (1.0 + 1e-6));
    if (next >= relax * (1.0 - 1e-9)) {
      throw InfeasibleInterior("polytope has no strictly interior point");
    }
    relax = next;
  }
  throw InfeasibleInterior("phase-I relaxation did not close");
}

void check_shape(const Matrix& A, const Vector& b) {
  const Index m = A.rows();
  const Index n = A.cols();
  if (n < 1 || m < n) {
    throw RankDeficient("need m >= n >= 1 constraints, got m=" + std::to_string(m) +
                        " n=" + std::to_string(n));
  }
  if (b.size() != m) throw ParseError("offset vector length does not match row count");
  if (!A.allFinite() || !b.allFinite()) throw ParseError("non-finite entry in polytope data");
  for (Index i = 0; i < m; ++i) {
    if (A.row(i).cwiseAbs().maxCoeff() == 0.0) {
      throw ParseError("constraint row " + std::to_string(i) + " is the zero vector");
    }
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(A);
  qr.setThreshold(1e-10);
  if (qr.rank() < n) {
    throw RankDeficient("constraint matrix has rank " + std::to_string(qr.rank()) +
                        " < n=" + std::to_string(n));
  }
}

}  // namespace

Polytope::Polytope(Matrix A, Vector b, Vector interior)
    : A_(std::move(A)), b_(std::move(b)), interior_(std::move(interior)) {}

Polytope Polytope::from_data(Matrix A, Vector b) {
  check_shape(A, b);
  Vector witness = find_interior(A, b);
  // Polish toward the analytic center when the barrier has a minimizer;
  // keep the plain phase-I point otherwise (unbounded polytopes).
  NewtonResult centered = barrier_newton(A, b, witness, 0.0, 1e-10, 200);
  if ((A * centered.x - b).minCoeff() > 0.0) witness = centered.x;
  return Polytope(std::move(A), std::move(b), std::move(witness));
}

Polytope Polytope::from_data(Matrix A, Vector b, Vector interior_witness) {
  check_shape(A, b);
  if (interior_witness.size() != A.cols()) {
    throw InvalidDimension("interior witness has wrong dimension");
  }
  if (((A * interior_witness - b).array() <= 0.0).any()) {
    throw InfeasibleInterior("supplied witness is not strictly interior");
  }
  return Polytope(std::move(A), std::move(b), std::move(interior_witness));
}

Polytope Polytope::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> numbers;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double value = 0.0;
    while (fields >> value) numbers.push_back(value);
    std::string trailing;
    if (!fields.eof() && fields.fail()) {
      fields.clear();
      fields >> trailing;
      throw ParseError("unparseable token '" + trailing + "'");
    }
  }
  if (numbers.size() < 2) throw ParseError("missing 'm n' header");
  const double m_raw = numbers[0];
  const double n_raw = numbers[1];
  if (m_raw != std::floor(m_raw) || n_raw != std::floor(n_raw) || m_raw < 1 || n_raw < 1) {
    throw ParseError("header 'm n' must be positive integers");
  }
  const Index m = static_cast<Index>(m_raw);
  const Index n = static_cast<Index>(n_raw);
  if (static_cast<Index>(numbers.size()) != 2 + m * (n + 1)) {
    throw ParseError("expected " + std::to_string(m * (n + 1)) +
                     " entries after the header, got " +
                     std::to_string(numbers.size() - 2));
  }
  Matrix A(m, n);
  Vector b(m);
  Index k = 2;
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) A(i, j) = numbers[k++];
    b[i] = numbers[k++];
  }
  return from_data(std::move(A), std::move(b));
}

Polytope Polytope::hypercube(Index n, double lo, double hi) {
  if (n < 1) throw InvalidDimension("hypercube needs n >= 1");
  if (!(lo < hi)) throw InvalidDimension("hypercube needs lo < hi");
  Matrix A = Matrix::Zero(2 * n, n);
  Vector b(2 * n);
  for (Index k = 0; k < n; ++k) {
    A(2 * k, k) = 1.0;
    b[2 * k] = lo;
    A(2 * k + 1, k) = -1.0;
    b[2 * k + 1] = -hi;
  }
  Vector center = Vector::Constant(n, 0.5 * (lo + hi));
  return from_data(std::move(A), std::move(b), std::move(center));
}

Polytope Polytope::simplex(Index n) {
  if (n < 1) throw InvalidDimension("simplex needs n >= 1");
  Matrix A = Matrix::Zero(n + 1, n);
  A.topRows(n).setIdentity();
  A.row(n).setConstant(-1.0);
  Vector b = Vector::Zero(n + 1);
  b[n] = -1.0;
  Vector center = Vector::Constant(n, 1.0 / static_cast<double>(n + 1));
  return from_data(std::move(A), std::move(b), std::move(center));
}

Polytope Polytope::random(Index n, Index m, std::uint64_t seed) {
  if (n < 1) throw InvalidDimension("random polytope needs n >= 1");
  if (m < n + 1) throw InvalidDimension("random polytope needs m >= n + 1");
  Rng rng(seed);
  Matrix A(m, n);
  for (Index i = 0; i < m; ++i) {
    Vector row;
    double norm = 0.0;
    do {
      row = rng.normal_vector(n);
      norm = row.norm();
    } while (norm < 1e-12);
    A.row(i) = row.transpose() / norm;
  }
  Vector b = Vector::Constant(m, -1.0);
  return from_data(std::move(A), std::move(b), Vector::Zero(n));
}

Vector Polytope::slacks(const Vector& x) const { return A_ * x - b_; }

bool Polytope::contains_strictly(const Vector& x, double margin) const {
  return slacks(x).minCoeff() > margin;
}

Vector Polytope::analytic_center() const {
  NewtonResult result = barrier_newton(A_, b_, interior_, 0.0, 1e-8, 500);
  if (!result.converged || !contains_strictly(result.x)) {
    throw NoInteriorPoint("damped Newton did not reach the analytic center");
  }
  return result.x;
}

}  // namespace rhmc
