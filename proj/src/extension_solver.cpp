#include "krein/extension_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "krein/error.hpp"
#include "krein/parallel.hpp"

namespace krein {

ExtensionSpec ExtensionSpec::parameter(Matrix theta)
{
  if (theta.rows() == 0 || theta.rows() != theta.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "Theta must be a non-empty square matrix");
  }
  if (!theta.allFinite()) {
    throw Error(ErrorCode::NonFiniteValue, "Theta has non-finite entries");
  }
  if (hermiticity_defect(theta) > kHermitianTolerance * std::max(1.0, max_abs(theta))) {
    throw Error(ErrorCode::NotHermitian, "Theta must be Hermitian");
  }
  return ExtensionSpec(Kind::OperatorParameter, std::move(theta));
}

ExtensionSpec ExtensionSpec::distinguished()
{
  return ExtensionSpec(Kind::DistinguishedRelation, Matrix());
}

const Matrix &ExtensionSpec::theta() const
{
  if (kind_ != Kind::OperatorParameter) {
    throw Error(ErrorCode::NotApplicable, "the distinguished relation carries no Theta");
  }
  return theta_;
}

namespace {

void check_theta(const KreinField &field, const Matrix &theta)
{
  if (theta.rows() != field.aux_dim() || theta.cols() != field.aux_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "Theta size does not match the auxiliary space");
  }
}

std::string format_z(Complex z)
{
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// Eigen-data of the Hermitian matrix Theta + Gamma(lambda) at real lambda.
struct LineSample {
  double smallest = 0.0;
  double scale = 0.0;
  int negative = 0;
};

class RealLineEvaluator {
public:
  RealLineEvaluator(const KreinField &field, const Matrix &theta)
      : field_(field), theta_(theta), theta_norm_(spectral_norm(theta))
  {
  }

  LineSample operator()(double lambda) const
  {
    const Matrix gamma = hermitian_part(weyl(field_, lambda).gamma);
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(theta_ + gamma), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Matrix> gs(gamma, Eigen::EigenvaluesOnly);
    LineSample s;
    s.smallest = es.eigenvalues().cwiseAbs().minCoeff();
    s.negative = static_cast<int>((es.eigenvalues().array() < 0.0).count());
    s.scale = theta_norm_ + gs.eigenvalues().cwiseAbs().maxCoeff();
    return s;
  }

  double smallest(double lambda) const { return (*this)(lambda).smallest; }

private:
  const KreinField &field_;
  const Matrix &theta_;
  double theta_norm_;
};

struct Bracket {
  double lower;
  double upper;
  int crossings; // inertia change across the bracket
};

double relative_width(double lo, double hi, double rel)
{
  return rel * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
}

// Splits [lo, hi] by inertia until every sub-bracket holding a crossing is narrow.
void isolate(const RealLineEvaluator &eval, double lo, double hi, int nlo, int nhi, std::vector<Bracket> &out)
{
  if (nlo == nhi) {
    return;
  }
  if (hi - lo <= relative_width(lo, hi, 1e-8)) {
    out.push_back({lo, hi, nlo - nhi});
    return;
  }
  const double mid = 0.5 * (lo + hi);
  const int nmid = eval(mid).negative;
  isolate(eval, lo, mid, nlo, nmid, out);
  isolate(eval, mid, hi, nmid, nhi, out);
}

double golden_section(const RealLineEvaluator &eval, double lo, double hi)
{
  constexpr double ratio = 0.6180339887498949;
  const double tol = relative_width(lo, hi, 1e-14);
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = eval.smallest(x1);
  double f2 = eval.smallest(x2);
  for (int iter = 0; iter < 400 && hi - lo > tol; ++iter) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = eval.smallest(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = eval.smallest(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

void check_interval(const KreinField &field, double a, double b)
{
  for (double ev : field.base().eigenvalues()) {
    if (ev >= a - kSpectrumCollisionTolerance && ev <= b + kSpectrumCollisionTolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "interval [" << a << ", " << b << "] contains the eigenvalue " << ev << " of A";
      throw Error(ErrorCode::IntervalTouchesBaseSpectrum, msg.str());
    }
  }
}

} // namespace

Matrix boundary_operator(const KreinField &field, const ExtensionSpec &spec, Complex z)
{
  const Matrix &theta = spec.theta();
  check_theta(field, theta);
  return theta + weyl(field, z).gamma;
}

namespace {

// Theta + Gamma from a sample, LU-factored after the conditioning check.
Eigen::PartialPivLU<Matrix> factor_boundary(const KreinField &field, const Matrix &theta, const WeylSample &sample)
{
  check_theta(field, theta);
  if (sample.gamma.rows() != field.aux_dim() || sample.gamma.cols() != field.aux_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "Weyl sample size does not match the auxiliary space");
  }
  const Matrix bop = theta + sample.gamma;
  Eigen::JacobiSVD<Matrix> svd(bop);
  const auto &sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (!(smallest > 0.0) || sv(0) / smallest > kBoundaryConditionLimit) {
    throw Error(ErrorCode::SingularBoundaryOperator,
                "Theta + Gamma(z) is numerically singular at z = " + format_z(sample.z));
  }
  return Eigen::PartialPivLU<Matrix>(bop);
}

} // namespace

Matrix krein_resolvent(const KreinField &field, const Matrix &theta, const WeylSample &sample)
{
  const auto lu = factor_boundary(field, theta, sample);
  const Complex z = sample.z;
  const Matrix base = resolvent(field.base(), z);
  const Matrix gz = gmap(field, z);
  const Matrix gzbar_adj = gmap(field, std::conj(z)).adjoint();
  return base + gz * lu.solve(gzbar_adj);
}

Matrix krein_resolvent_apply(const KreinField &field, const Matrix &theta, const WeylSample &sample, const Matrix &x)
{
  const auto lu = factor_boundary(field, theta, sample);
  const Complex z = sample.z;
  const Matrix gz = gmap(field, z);
  const Matrix gzbar = gmap(field, std::conj(z));
  return field.base().solve(z, x) + gz * lu.solve(gzbar.adjoint() * x);
}

Matrix krein_resolvent_apply(const KreinField &field, const ExtensionSpec &spec, Complex z, const Matrix &x)
{
  if (!spec.has_parameter()) {
    return field.base().solve(z, x);
  }
  return krein_resolvent_apply(field, spec.theta(), weyl(field, z), x);
}

Matrix krein_resolvent(const KreinField &field, const ExtensionSpec &spec, Complex z)
{
  if (!spec.has_parameter()) {
    return resolvent(field.base(), z);
  }
  return krein_resolvent(field, spec.theta(), weyl(field, z));
}

SingularityProbe probe_boundary_operator(const KreinField &field, const ExtensionSpec &spec, Complex z)
{
  const Matrix &theta = spec.theta();
  check_theta(field, theta);
  const Matrix gamma = weyl(field, z).gamma;
  Eigen::JacobiSVD<Matrix> svd(theta + gamma);
  SingularityProbe probe;
  probe.smallest = svd.singularValues()(svd.singularValues().size() - 1);
  // Relative to |Theta| + |Gamma(z)| rather than |Theta + Gamma(z)|, which vanishes
  // identically when Theta = -Gamma(lambda).
  probe.scale = spectral_norm(theta) + spectral_norm(gamma);
  return probe;
}

Membership resolvent_membership(const KreinField &field, const ExtensionSpec &spec, Complex z)
{
  if (!spec.has_parameter()) {
    field.base().solve(z, Matrix::Zero(field.dim(), 0)); // collision guard only
    return Membership::InResolventSet;
  }
  return probe_boundary_operator(field, spec, z).singular() ? Membership::InSpectrum : Membership::InResolventSet;
}

EigenScan eigen_solve(const KreinField &field, const ExtensionSpec &spec, double a, double b, int grid_points)
{
  if (!(std::isfinite(a) && std::isfinite(b) && a < b)) {
    throw Error(ErrorCode::InvalidSpec, "eigen_solve needs a finite interval with a < b");
  }
  if (grid_points < 16) {
    throw Error(ErrorCode::InvalidSpec, "eigen_solve needs at least 16 grid points");
  }
  check_interval(field, a, b);

  EigenScan scan;
  if (!spec.has_parameter()) {
    // The relation {0} x h is A itself, whose spectrum lies outside the interval.
    return scan;
  }
  const Matrix &theta = spec.theta();
  check_theta(field, theta);
  const RealLineEvaluator eval(field, theta);

  const auto count = static_cast<std::size_t>(grid_points);
  std::vector<LineSample> samples(count);
  scan.grid.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    scan.grid[j] = j + 1 == count ? b : a + (b - a) * static_cast<double>(j) / static_cast<double>(count - 1);
  }
  parallel_for(count, [&](std::size_t j) { samples[j] = eval(scan.grid[j]); });
  scan.smallest_singular_value.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    scan.smallest_singular_value[j] = samples[j].smallest;
  }

  // Gamma is increasing on each gap of sigma(A), so every eigenvalue of Theta + Gamma
  // crosses zero upwards and the inertia drops by exactly the number of roots passed.
  std::vector<Bracket> brackets;
  {
    // A root sitting exactly on a shows up only against a point just left of it,
    // close enough that no pole of Gamma lies in between.
    const double step = std::min(relative_width(a, a, 1e-8), 0.5 * field.base().distance_to_spectrum(a));
    const double left = a - step;
    if (field.base().distance_to_spectrum(left) > kSpectrumCollisionTolerance) {
      const int outside = eval(left).negative;
      if (outside != samples[0].negative) {
        isolate(eval, left, a, outside, samples[0].negative, brackets);
      }
    }
  }
  for (std::size_t j = 0; j + 1 < count; ++j) {
    if (samples[j].negative != samples[j + 1].negative) {
      isolate(eval, scan.grid[j], scan.grid[j + 1], samples[j].negative, samples[j + 1].negative, brackets);
    }
  }

  for (const auto &br : brackets) {
    const double lambda = golden_section(eval, br.lower, br.upper);
    const Matrix bop = hermitian_part(boundary_operator(field, spec, lambda));
    Eigen::JacobiSVD<Matrix> svd(bop, Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    const double threshold = kKernelTolerance * eval(lambda).scale;
    Index m = 0;
    for (Index j = 0; j < sv.size(); ++j) {
      if (sv(j) < threshold) {
        ++m;
      }
    }
    if (m == 0) {
      std::ostringstream msg;
      msg << "bracket refined to smallest singular value " << sv(sv.size() - 1) << " above threshold "
          << threshold;
      scan.failures.push_back({br.lower, br.upper, msg.str()});
      continue;
    }
    if (m != br.crossings) {
      std::ostringstream msg;
      msg << "inertia changes by " << br.crossings << " but the kernel has dimension " << m;
      scan.failures.push_back({br.lower, br.upper, msg.str()});
    }
    EigenResult result;
    result.lambda = lambda;
    result.multiplicity = m;
    result.kernel_basis = svd.matrixV().rightCols(m);
    result.eigenvectors = gmap(field, lambda) * result.kernel_basis;
    scan.eigenvalues.push_back(std::move(result));
  }

  std::sort(scan.eigenvalues.begin(), scan.eigenvalues.end(),
            [](const EigenResult &x, const EigenResult &y) { return x.lambda < y.lambda; });
  std::vector<EigenResult> unique;
  for (auto &r : scan.eigenvalues) {
    if (!unique.empty() && r.lambda - unique.back().lambda <= relative_width(r.lambda, r.lambda, 1e-9)) {
      continue;
    }
    unique.push_back(std::move(r));
  }
  scan.eigenvalues = std::move(unique);
  return scan;
}

double spectral_search_bound(const KreinField &field, const ExtensionSpec &spec)
{
  const Matrix &theta = spec.theta();
  check_theta(field, theta);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(theta + field.weyl_offset()), Eigen::EigenvaluesOnly);
  const double gap = es.eigenvalues().cwiseAbs().minCoeff();
  const double tau_norm = spectral_norm(field.trace().matrix());
  const double bound = field.base().norm() + tau_norm * tau_norm / gap + 1.0;
  if (!std::isfinite(bound)) {
    throw Error(ErrorCode::NotApplicable, "Theta + tau G_* is singular; no finite search bound");
  }
  return bound;
}

EigenScan eigen_solve_resolvent_set(const KreinField &field, const ExtensionSpec &spec, double margin,
                                    int grid_points)
{
  EigenScan all;
  if (!spec.has_parameter()) {
    return all;
  }
  const double bound = spectral_search_bound(field, spec);
  // Eigenvalues of A closer than 2 * margin form one excluded cluster [first, last].
  std::vector<std::pair<double, double>> poles;
  for (double ev : field.base().eigenvalues()) {
    if (poles.empty() || ev - poles.back().second > 2.0 * margin) {
      poles.emplace_back(ev, ev);
    } else {
      poles.back().second = ev;
    }
  }
  double left = -bound;
  auto run = [&](double lo, double hi) {
    if (hi - lo <= 0.0) {
      return;
    }
    EigenScan part = eigen_solve(field, spec, lo, hi, grid_points);
    for (auto &r : part.eigenvalues) {
      all.eigenvalues.push_back(std::move(r));
    }
    for (auto &f : part.failures) {
      all.failures.push_back(std::move(f));
    }
  };
  for (const auto &[first, last] : poles) {
    run(left, first - margin);
    left = last + margin;
  }
  run(left, bound);
  return all;
}

double boundary_condition_residual(const KreinField &field, const ExtensionSpec &spec, const EigenResult &result)
{
  const Matrix &theta = spec.theta();
  const Matrix regular = (gmap(field, result.lambda) - field.g_star()) * result.kernel_basis;
  const Matrix defect = theta * result.kernel_basis - field.trace().matrix() * regular;
  double worst = 0.0;
  for (Index j = 0; j < defect.cols(); ++j) {
    worst = std::max(worst, defect.col(j).norm());
  }
  return worst;
}

BaseOperator recover_operator(const KreinField &field, const ExtensionSpec &spec, Complex z)
{
  if (!spec.has_parameter()) {
    return field.base();
  }
  const Index n = field.dim();
  const Matrix rt = krein_resolvent(field, spec, z);
  Eigen::PartialPivLU<Matrix> lu(rt);
  if (!(lu.rcond() > 1e-15)) {
    throw Error(ErrorCode::SingularResolvent, "Krein resolvent is not invertible at z = " + format_z(z));
  }
  const Matrix recovered = z * Matrix::Identity(n, n) - lu.inverse();
  const double defect = hermiticity_defect(recovered);
  if (defect > kRecoveredHermitianTolerance * std::max(1.0, max_abs(recovered))) {
    std::ostringstream msg;
    msg << "recovered operator is not Hermitian (defect " << defect << ")";
    throw Error(ErrorCode::NotHermitian, msg.str());
  }
  return BaseOperator::dense(hermitian_part(recovered));
}

Index rank_of_perturbation(const KreinField &field, const ExtensionSpec &spec)
{
  if (!spec.has_parameter()) {
    return 0;
  }
  const BaseOperator recovered = recover_operator(field, spec, kI);
  const Matrix diff = recovered.to_dense() - field.base().to_dense();
  // Both operators are Hermitian, so the singular values of the difference are |eigenvalues|.
  const RealVector ev = Eigen::SelfAdjointEigenSolver<Matrix>(diff, Eigen::EigenvaluesOnly).eigenvalues();
  const double scale = std::max({1.0, recovered.norm(), field.base().norm()});
  Index rank = 0;
  for (Index j = 0; j < ev.size(); ++j) {
    if (std::abs(ev(j)) > kKernelTolerance * scale) {
      ++rank;
    }
  }
  return rank;
}

} // namespace krein
