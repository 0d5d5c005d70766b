#include "krein/types.hpp"

namespace krein {

double max_abs(const Matrix &m)
{
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const Matrix &m)
{
  return m.allFinite();
}

Matrix imag_part(const Matrix &m)
{
  return (m - m.adjoint()) / (2.0 * kI);
}

Matrix hermitian_part(const Matrix &m)
{
  return (m + m.adjoint()) / 2.0;
}

double hermiticity_defect(const Matrix &m)
{
  return max_abs(m - m.adjoint());
}

double min_eigenvalue(const Matrix &hermitian)
{
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(hermitian), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const Matrix &hermitian)
{
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(hermitian), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double spectral_norm(const Matrix &m)
{
  if (m.size() == 0) {
    return 0.0;
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

} // namespace krein
