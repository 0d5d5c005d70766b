#include "krein/krein_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "krein/error.hpp"

namespace krein {

TraceMap::TraceMap(Matrix rows) : rows_(std::move(rows))
{
  if (rows_.rows() == 0 || rows_.cols() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "trace map must be non-empty");
  }
  if (!rows_.allFinite()) {
    throw Error(ErrorCode::NonFiniteValue, "trace map has non-finite entries");
  }
  if (rows_.rows() > rows_.cols()) {
    throw Error(ErrorCode::RankDeficientTrace, "trace map has more rows than the space dimension");
  }
  Eigen::JacobiSVD<Matrix> svd(rows_);
  const auto &sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (!(smallest >= kTraceRankTolerance * sv(0)) || sv(0) == 0.0) {
    std::ostringstream msg;
    msg << "trace map is not surjective (singular values " << sv(0) << " .. " << smallest << ")";
    throw Error(ErrorCode::RankDeficientTrace, msg.str());
  }
}

Vector TraceMap::apply(const Vector &phi) const
{
  if (phi.size() != rows_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "trace map operand has wrong length");
  }
  return rows_ * phi;
}

Matrix KreinField::apply_r(const Matrix &x) const
{
  return base_.solve(kI, x);
}

Matrix KreinField::r() const
{
  return resolvent(base_, kI);
}

Matrix gmap(const KreinField &field, Complex z)
{
  return field.base().solve_left(std::conj(z), field.trace().matrix()).adjoint();
}

KreinField build_field(BaseOperator base, TraceMap trace)
{
  if (trace.domain_dim() != base.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "trace map domain does not match operator dimension");
  }
  KreinField field(std::move(base), std::move(trace));
  field.g_plus_ = gmap(field, kI);
  field.g_minus_ = gmap(field, -kI);
  field.g_star_ = (field.g_plus_ + field.g_minus_) / 2.0;
  field.rg_ = field.apply_r(field.g_minus_);
  field.weyl_offset_ = hermitian_part(field.trace_.matrix() * field.g_star_);

  const double scale = std::max(1.0, field.g_minus_.norm());
  field.rg_residual_ = (field.rg_ - (kI / 2.0) * (field.g_plus_ - field.g_minus_)).norm() / scale;
  field.gstar_residual_ = (field.g_star_ - (-kI * field.rg_ + field.g_minus_)).norm() / scale;
  if (field.rg_residual_ > kFieldIdentityTolerance || field.gstar_residual_ > kFieldIdentityTolerance) {
    std::ostringstream msg;
    msg << "field identities violated (RG residual " << field.rg_residual_ << ", G_* residual "
        << field.gstar_residual_ << ")";
    throw Error(ErrorCode::IdentityViolation, msg.str());
  }
  return field;
}

double check_resolvent_identity(const KreinField &field, Complex z, Complex w)
{
  const Matrix gz = gmap(field, z);
  const Matrix gw = gmap(field, w);
  const Matrix lhs = (z - w) * field.base().solve(w, gz);
  return (lhs - (gw - gz)).norm();
}

DensenessReport denseness_diagnostic(const KreinField &field, Complex z)
{
  const Matrix g = gmap(field, z);
  DensenessReport report;

  Eigen::JacobiSVD<Matrix> svd(g);
  const auto &sv = svd.singularValues();
  for (Index j = 0; j < sv.size(); ++j) {
    if (sv(j) > kTraceRankTolerance * sv(0)) {
      ++report.intersection_dim;
    }
  }

  // Generalized Rayleigh quotient |G zeta|^2 / |G zeta|_+^2 minimized over zeta.
  const Matrix ag = field.base().apply(g);
  const Matrix plain = g.adjoint() * g;
  const Matrix graph = ag.adjoint() * ag + plain;
  Eigen::LLT<Matrix> llt(hermitian_part(graph));
  if (llt.info() == Eigen::Success) {
    const Matrix lower_inv = llt.matrixL().solve(Matrix::Identity(graph.rows(), graph.cols()));
    const double ratio = std::clamp(min_eigenvalue(lower_inv * plain * lower_inv.adjoint()), 0.0, 1.0);
    report.smallest_angle = std::asin(std::sqrt(ratio));
  }
  return report;
}

TraceMap orthonormalize_in_graph_metric(const BaseOperator &base, const TraceMap &trace)
{
  // tau phi = <u_j, phi>_+ with u_j = (A^2 + 1)^{-1} tau_j^*; Gram matrix W = tau (A^2+1)^{-1} tau^*.
  // (A^2 + 1)^{-1} = R(i) R(-i).
  const Matrix rows_adj = trace.matrix().adjoint();
  const Matrix u = base.solve(kI, base.solve(-kI, rows_adj));
  const Matrix gram = hermitian_part(trace.matrix() * u);
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::RankDeficientTrace, "graph Gram matrix of the trace map is not positive definite");
  }
  Matrix rows = llt.matrixL().solve(trace.matrix());
  return TraceMap(std::move(rows));
}

} // namespace krein
