#include "krein/boundary_triple.hpp"

#include "krein/error.hpp"

namespace krein {

namespace {

void check_dims(const KreinField &field, const DomainElement &el)
{
  if (el.regular.size() != field.dim() || el.charge.size() != field.aux_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "domain element does not match the field dimensions");
  }
}

} // namespace

Vector represented_vector(const KreinField &field, const DomainElement &el)
{
  check_dims(field, el);
  return el.regular + field.g_star() * el.charge;
}

Vector adjoint_action(const KreinField &field, const DomainElement &el)
{
  check_dims(field, el);
  return field.base().apply(el.regular) + field.rg() * el.charge;
}

Vector gamma1(const KreinField &field, const DomainElement &el)
{
  check_dims(field, el);
  return -field.trace().apply(el.regular);
}

Vector gamma2(const KreinField &field, const DomainElement &el)
{
  check_dims(field, el);
  return el.charge;
}

double greens_residual(const KreinField &field, const DomainElement &el1, const DomainElement &el2)
{
  const Vector phi = represented_vector(field, el1);
  const Vector psi = represented_vector(field, el2);
  const Complex lhs = adjoint_action(field, el1).dot(psi) - phi.dot(adjoint_action(field, el2));
  const Complex rhs = gamma1(field, el1).dot(gamma2(field, el2)) - gamma2(field, el1).dot(gamma1(field, el2));
  return std::abs(lhs - rhs);
}

WeylSample weyl(const KreinField &field, Complex z)
{
  return WeylSample{z, field.weyl_offset() - field.trace().matrix() * gmap(field, z)};
}

double q_function_residual(const KreinField &field, Complex z, Complex w)
{
  const Matrix gz = gmap(field, z);
  const Matrix gw = gmap(field, w);
  const Matrix gamma_z = field.weyl_offset() - field.trace().matrix() * gz;
  const Matrix gamma_w = field.weyl_offset() - field.trace().matrix() * gw;
  return (gamma_z - gamma_w.adjoint() - (z - std::conj(w)) * gw.adjoint() * gz).norm();
}

double dissipativity_margin(const WeylSample &sample)
{
  return min_eigenvalue(imag_part(sample.gamma));
}

WeylCheck check_weyl_sample(const KreinField &field, const WeylSample &sample)
{
  if (sample.gamma.rows() != field.aux_dim() || sample.gamma.cols() != field.aux_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "Weyl sample has the wrong size");
  }
  const Matrix g_ref = field.g_plus();
  const Matrix gamma_ref = field.weyl_offset() - field.trace().matrix() * g_ref;
  const Matrix gz = gmap(field, sample.z);
  WeylCheck check;
  check.q_residual = (sample.gamma - gamma_ref.adjoint() - (sample.z - std::conj(kI)) * g_ref.adjoint() * gz).norm();
  check.dissipativity_margin = dissipativity_margin(sample);
  return check;
}

WeylSample weyl_shift(const WeylSample &sample, const Matrix &shift)
{
  if (shift.rows() != sample.gamma.rows() || shift.cols() != sample.gamma.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "shift has the wrong size");
  }
  if (hermiticity_defect(shift) > kHermitianTolerance * std::max(1.0, max_abs(shift))) {
    throw Error(ErrorCode::NotHermitian, "Weyl function shift must be Hermitian");
  }
  return WeylSample{sample.z, sample.gamma + shift};
}

DomainElement surjectivity_witness(const KreinField &field, const Vector &target1, const Vector &target2)
{
  if (target1.size() != field.aux_dim() || target2.size() != field.aux_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "boundary targets have the wrong length");
  }
  const Matrix &tau = field.trace().matrix();
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(tau);
  if (cod.rank() < tau.rows()) {
    throw Error(ErrorCode::RankDeficientTrace, "trace map lost rank");
  }
  DomainElement el;
  el.regular = cod.solve(Vector(-target1));
  el.charge = target2;
  return el;
}

} // namespace krein
