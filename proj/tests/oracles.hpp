#pragma once

// Independent reference computations for the tests. Everything here goes through a
// dense eigendecomposition, never through the library's solves.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

#include "krein/types.hpp"

namespace oracle {

using krein::Complex;
using krein::Matrix;

// (-A + z)^{-1} = V diag(1/(z - lambda)) V^*
inline Matrix resolvent(const Matrix &a, Complex z)
{
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  const auto &lam = es.eigenvalues();
  Matrix d = Matrix::Zero(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < lam.size(); ++j) {
    d(j, j) = 1.0 / (z - lam(j));
  }
  return es.eigenvectors() * d * es.eigenvectors().adjoint();
}

// G(z) = (tau R(conj z))^*
inline Matrix gmap(const Matrix &a, const Matrix &tau, Complex z)
{
  return (tau * resolvent(a, std::conj(z))).adjoint();
}

// Gamma(z) = tau (G_* - G(z))
inline Matrix weyl(const Matrix &a, const Matrix &tau, Complex z)
{
  const Complex i(0.0, 1.0);
  const Matrix gstar = 0.5 * (gmap(a, tau, i) + gmap(a, tau, -i));
  return tau * (gstar - gmap(a, tau, z));
}

inline Eigen::VectorXd eigenvalues(const Matrix &a)
{
  return Eigen::SelfAdjointEigenSolver<Matrix>(a, Eigen::EigenvaluesOnly).eigenvalues();
}

// Lowest eigenvalue of a Hermitian tridiagonal matrix by Sturm-count bisection.
inline double lowest_tridiagonal_eigenvalue(const Eigen::VectorXd &diag, const krein::Vector &off)
{
  const Eigen::Index n = diag.size();
  double lo = diag(0), hi = diag(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(off(i - 1)) : 0.0) + (i + 1 < n ? std::abs(off(i)) : 0.0);
    lo = std::min(lo, diag(i) - r);
    hi = std::max(hi, diag(i) + r);
  }
  // number of eigenvalues below x
  auto below = [&](double x) {
    int count = 0;
    double q = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double b2 = i > 0 ? std::norm(off(i - 1)) : 0.0;
      q = diag(i) - x - (i > 0 ? b2 / q : 0.0);
      if (q == 0.0) {
        q = 1e-300;
      }
      count += q < 0.0 ? 1 : 0;
    }
    return count;
  };
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (below(mid) >= 1 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double golden()
{
  return (1.0 + std::sqrt(5.0)) / 2.0;
}

} // namespace oracle
