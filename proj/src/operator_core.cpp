#include "krein/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "krein/error.hpp"

namespace krein {

struct BaseOperator::Data {
  OperatorKind kind = OperatorKind::Dense;
  Index n = 0;
  Matrix dense;
  RealVector diag;
  Vector offdiag;
  RealVector eigenvalues;
  std::optional<Spectrum> spectrum;
};

namespace {

RealVector dense_eigenvalues(const Matrix &m)
{
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "dense Hermitian eigensolver did not converge");
  }
  return es.eigenvalues();
}

// Unitary diagonal D with D* A D real symmetric tridiagonal.
Vector tridiagonal_phases(const Vector &offdiag, Index n)
{
  Vector d(n);
  d(0) = 1.0;
  for (Index j = 0; j + 1 < n; ++j) {
    const double mag = std::abs(offdiag(j));
    d(j + 1) = mag > 0.0 ? d(j) * std::conj(offdiag(j)) / mag : d(j);
  }
  return d;
}

Spectrum tridiagonal_spectrum(const RealVector &diag, const Vector &offdiag, bool vectors)
{
  const Index n = diag.size();
  Spectrum out;
  if (n == 1) {
    out.values = diag;
    out.vectors = Matrix::Identity(1, 1);
    return out;
  }
  RealVector sub = offdiag.cwiseAbs();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "tridiagonal eigensolver did not converge");
  }
  out.values = es.eigenvalues();
  if (vectors) {
    out.vectors = tridiagonal_phases(offdiag, n).asDiagonal() * es.eigenvectors().cast<Complex>();
  }
  return out;
}

} // namespace

BaseOperator::BaseOperator(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

BaseOperator BaseOperator::dense(Matrix entries)
{
  if (entries.rows() == 0 || entries.rows() != entries.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "operator matrix must be square and non-empty");
  }
  if (!entries.allFinite()) {
    throw Error(ErrorCode::NonFiniteValue, "operator matrix has non-finite entries");
  }
  const double scale = max_abs(entries);
  const double defect = hermiticity_defect(entries);
  if (defect > kHermitianTolerance * scale) {
    std::ostringstream msg;
    msg << "operator matrix is not Hermitian (defect " << defect << ", scale " << scale << ")";
    throw Error(ErrorCode::NotHermitian, msg.str());
  }
  auto data = std::make_shared<Data>();
  data->kind = OperatorKind::Dense;
  data->n = entries.rows();
  data->dense = std::move(entries);
  data->eigenvalues = dense_eigenvalues(data->dense);
  return BaseOperator(std::move(data));
}

BaseOperator BaseOperator::tridiagonal(RealVector diagonal, Vector offdiagonal)
{
  if (diagonal.size() == 0 || offdiagonal.size() != diagonal.size() - 1) {
    throw Error(ErrorCode::DimensionMismatch, "tridiagonal operator needs n diagonal and n-1 off-diagonal entries");
  }
  if (!diagonal.allFinite() || !offdiagonal.allFinite()) {
    throw Error(ErrorCode::NonFiniteValue, "tridiagonal operator has non-finite entries");
  }
  auto data = std::make_shared<Data>();
  data->kind = OperatorKind::Tridiagonal;
  data->n = diagonal.size();
  data->diag = std::move(diagonal);
  data->offdiag = std::move(offdiagonal);
  data->eigenvalues = tridiagonal_spectrum(data->diag, data->offdiag, false).values;
  return BaseOperator(std::move(data));
}

Index BaseOperator::dim() const { return data_->n; }
OperatorKind BaseOperator::kind() const { return data_->kind; }
const RealVector &BaseOperator::eigenvalues() const { return data_->eigenvalues; }
const std::optional<Spectrum> &BaseOperator::spectrum_cache() const { return data_->spectrum; }

BaseOperator BaseOperator::with_spectrum_cache() const
{
  if (data_->spectrum) {
    return *this;
  }
  auto data = std::make_shared<Data>(*data_);
  data->spectrum = diagonalize(*this);
  return BaseOperator(std::move(data));
}

const Matrix &BaseOperator::dense_entries() const
{
  if (data_->kind != OperatorKind::Dense) {
    throw Error(ErrorCode::NotApplicable, "operator is not stored densely");
  }
  return data_->dense;
}

const RealVector &BaseOperator::diagonal() const
{
  if (data_->kind != OperatorKind::Tridiagonal) {
    throw Error(ErrorCode::NotApplicable, "operator is not tridiagonal");
  }
  return data_->diag;
}

const Vector &BaseOperator::offdiagonal() const
{
  if (data_->kind != OperatorKind::Tridiagonal) {
    throw Error(ErrorCode::NotApplicable, "operator is not tridiagonal");
  }
  return data_->offdiag;
}

Matrix BaseOperator::to_dense() const
{
  if (data_->kind == OperatorKind::Dense) {
    return data_->dense;
  }
  const Index n = data_->n;
  Matrix m = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    m(j, j) = data_->diag(j);
  }
  for (Index j = 0; j + 1 < n; ++j) {
    m(j, j + 1) = data_->offdiag(j);
    m(j + 1, j) = std::conj(data_->offdiag(j));
  }
  return m;
}

Matrix BaseOperator::apply(const Matrix &x) const
{
  if (x.rows() != data_->n) {
    throw Error(ErrorCode::DimensionMismatch, "operand length does not match operator dimension");
  }
  if (data_->kind == OperatorKind::Dense) {
    return data_->dense * x;
  }
  const Index n = data_->n;
  Matrix y = data_->diag.cast<Complex>().asDiagonal() * x;
  for (Index j = 0; j + 1 < n; ++j) {
    y.row(j) += data_->offdiag(j) * x.row(j + 1);
    y.row(j + 1) += std::conj(data_->offdiag(j)) * x.row(j);
  }
  return y;
}

double BaseOperator::distance_to_spectrum(Complex z) const
{
  const auto &ev = data_->eigenvalues;
  const auto *begin = ev.data();
  const auto *end = begin + ev.size();
  const auto *it = std::lower_bound(begin, end, z.real());
  double best = std::numeric_limits<double>::infinity();
  if (it != end) {
    best = std::abs(z - *it);
  }
  if (it != begin) {
    best = std::min(best, std::abs(z - *(it - 1)));
  }
  return best;
}

double BaseOperator::norm() const
{
  const auto &ev = data_->eigenvalues;
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

void BaseOperator::guard(Complex z) const
{
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::NonFiniteValue, "spectral parameter is not finite");
  }
  const double d = distance_to_spectrum(z);
  if (d <= kSpectrumCollisionTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "z = " << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
        << "i lies within " << d << " of the spectrum";
    throw Error(ErrorCode::SpectrumCollision, msg.str());
  }
}

Matrix BaseOperator::solve(Complex z, const Matrix &rhs) const
{
  guard(z);
  if (rhs.rows() != data_->n) {
    throw Error(ErrorCode::DimensionMismatch, "right-hand side has wrong row count");
  }
  const Index n = data_->n;
  if (data_->kind == OperatorKind::Dense) {
    Matrix shifted = z * Matrix::Identity(n, n) - data_->dense;
    return Eigen::PartialPivLU<Matrix>(shifted).solve(rhs);
  }
  Vector diag = Vector::Constant(n, z) - data_->diag.cast<Complex>();
  Vector upper = -data_->offdiag;
  Vector lower = -data_->offdiag.conjugate();
  return solve_tridiagonal(std::move(lower), std::move(diag), std::move(upper), rhs);
}

Matrix BaseOperator::solve_left(Complex z, const Matrix &lhs) const
{
  guard(z);
  if (lhs.cols() != data_->n) {
    throw Error(ErrorCode::DimensionMismatch, "left operand has wrong column count");
  }
  const Index n = data_->n;
  // x (-A + z)^{-1} = ((-A^T + z)^{-1} x^T)^T
  if (data_->kind == OperatorKind::Dense) {
    Matrix shifted = z * Matrix::Identity(n, n) - data_->dense.transpose();
    return Eigen::PartialPivLU<Matrix>(shifted).solve(lhs.transpose()).transpose();
  }
  Vector diag = Vector::Constant(n, z) - data_->diag.cast<Complex>();
  Vector upper = -data_->offdiag.conjugate();
  Vector lower = -data_->offdiag;
  return solve_tridiagonal(std::move(lower), std::move(diag), std::move(upper), lhs.transpose()).transpose();
}

Matrix solve_tridiagonal(Vector lower, Vector diag, Vector upper, Matrix b)
{
  const Index n = diag.size();
  auto singular = [](Index row) {
    return Error(ErrorCode::SingularResolvent, "tridiagonal system is singular at row " + std::to_string(row));
  };
  // Gaussian elimination with row interchanges; after the sweep lower(k) holds the
  // second superdiagonal fill-in of row k.
  for (Index k = 0; k + 1 < n; ++k) {
    if (lower(k) == Complex(0.0)) {
      if (diag(k) == Complex(0.0)) {
        throw singular(k);
      }
    } else if (std::abs(diag(k)) >= std::abs(lower(k))) {
      const Complex mult = lower(k) / diag(k);
      diag(k + 1) -= mult * upper(k);
      b.row(k + 1) -= mult * b.row(k);
      if (k + 2 < n) {
        lower(k) = 0.0;
      }
    } else {
      const Complex mult = diag(k) / lower(k);
      diag(k) = lower(k);
      const Complex temp = diag(k + 1);
      diag(k + 1) = upper(k) - mult * temp;
      if (k + 2 < n) {
        lower(k) = upper(k + 1);
        upper(k + 1) = -mult * lower(k);
      }
      upper(k) = temp;
      b.row(k).swap(b.row(k + 1));
      b.row(k + 1) -= mult * b.row(k);
    }
  }
  if (diag(n - 1) == Complex(0.0)) {
    throw singular(n - 1);
  }
  b.row(n - 1) /= diag(n - 1);
  if (n > 1) {
    b.row(n - 2) = (b.row(n - 2) - upper(n - 2) * b.row(n - 1)) / diag(n - 2);
  }
  for (Index k = n - 3; k >= 0; --k) {
    b.row(k) = (b.row(k) - upper(k) * b.row(k + 1) - lower(k) * b.row(k + 2)) / diag(k);
  }
  return b;
}

Matrix resolvent(const BaseOperator &op, Complex z)
{
  return op.solve(z, Matrix::Identity(op.dim(), op.dim()));
}

Spectrum diagonalize(const BaseOperator &op)
{
  if (op.spectrum_cache()) {
    return *op.spectrum_cache();
  }
  if (op.kind() == OperatorKind::Tridiagonal) {
    return tridiagonal_spectrum(op.diagonal(), op.offdiagonal(), true);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.dense_entries());
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "dense Hermitian eigensolver did not converge");
  }
  return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

Complex GraphMetric::inner(const Vector &phi, const Vector &psi) const
{
  if (phi.size() != op_.dim() || psi.size() != op_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "graph inner product operands have wrong length");
  }
  const Vector a_phi = op_.apply(phi);
  const Vector a_psi = op_.apply(psi);
  return a_phi.dot(a_psi) + phi.dot(psi);
}

Complex graph_inner(const GraphMetric &metric, const Vector &phi, const Vector &psi)
{
  return metric.inner(phi, psi);
}

} // namespace krein
