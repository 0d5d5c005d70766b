#pragma once

#include <complex>

#include <Eigen/Dense>

namespace krein {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

// Largest entry modulus; zero for empty matrices.
double max_abs(const Matrix &m);

bool all_finite(const Matrix &m);

// (M - M*) / 2i, the Hermitian imaginary part.
Matrix imag_part(const Matrix &m);

// (M + M*) / 2
Matrix hermitian_part(const Matrix &m);

// Largest modulus of M - M*.
double hermiticity_defect(const Matrix &m);

// Extreme eigenvalues of a Hermitian matrix (input is hermitized first).
double min_eigenvalue(const Matrix &hermitian);
double max_eigenvalue(const Matrix &hermitian);

// Spectral norm via singular values.
double spectral_norm(const Matrix &m);

} // namespace krein
