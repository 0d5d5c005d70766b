#pragma once

#include <memory>
#include <optional>

#include "krein/types.hpp"

namespace krein {

// Absolute distance from the spectrum below which a resolvent is refused.
inline constexpr double kSpectrumCollisionTolerance = 1e-10;

// Relative Hermiticity tolerance accepted when constructing a dense operator.
inline constexpr double kHermitianTolerance = 1e-12;

enum class OperatorKind { Dense, Tridiagonal };

struct Spectrum {
  RealVector values; // ascending
  Matrix vectors;    // orthonormal columns, vectors.col(j) pairs with values(j)
};

// A self-adjoint operator on C^n, stored densely or as a Hermitian tridiagonal band.
// Immutable; copies share storage. The eigenvalues are computed once at construction
// and back the spectral-collision guard; eigenvectors are cached only on request.
class BaseOperator {
public:
  static BaseOperator dense(Matrix entries);

  // diagonal has n entries; offdiagonal has n-1 entries holding A(j, j+1).
  static BaseOperator tridiagonal(RealVector diagonal, Vector offdiagonal);

  Index dim() const;
  OperatorKind kind() const;

  const RealVector &eigenvalues() const;
  const std::optional<Spectrum> &spectrum_cache() const;

  // Returns a copy carrying the full eigen-decomposition.
  BaseOperator with_spectrum_cache() const;

  // Only valid for the matching kind.
  const Matrix &dense_entries() const;
  const RealVector &diagonal() const;
  const Vector &offdiagonal() const;

  Matrix to_dense() const;
  Matrix apply(const Matrix &x) const;

  double distance_to_spectrum(Complex z) const;

  // Largest |eigenvalue|.
  double norm() const;

  // (-A + z)^{-1} rhs, by LU (dense) or pivoted tridiagonal elimination.
  Matrix solve(Complex z, const Matrix &rhs) const;

  // lhs (-A + z)^{-1}
  Matrix solve_left(Complex z, const Matrix &lhs) const;

private:
  struct Data;
  explicit BaseOperator(std::shared_ptr<const Data> data);

  void guard(Complex z) const;

  std::shared_ptr<const Data> data_;
};

// R(z) = (-A + z)^{-1} as a full matrix.
Matrix resolvent(const BaseOperator &op, Complex z);

// Ascending eigenvalues with orthonormal eigenvectors. Uses the cache when present.
Spectrum diagonalize(const BaseOperator &op);

// Inner product of the graph norm space: <A phi, A psi> + <phi, psi>.
class GraphMetric {
public:
  explicit GraphMetric(BaseOperator op) : op_(std::move(op)) {}

  const BaseOperator &base() const { return op_; }

  Complex inner(const Vector &phi, const Vector &psi) const;

private:
  BaseOperator op_;
};

Complex graph_inner(const GraphMetric &metric, const Vector &phi, const Vector &psi);

// Solves a (possibly non-Hermitian) tridiagonal system with partial pivoting.
// lower(j) = M(j+1, j), upper(j) = M(j, j+1).
Matrix solve_tridiagonal(Vector lower, Vector diag, Vector upper, Matrix rhs);

} // namespace krein
