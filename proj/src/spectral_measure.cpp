#include "krein/spectral_measure.hpp"

#include <cmath>
#include <numbers>

#include "krein/error.hpp"
#include "krein/parallel.hpp"

namespace krein {

HerglotzReport herglotz_certify(const KreinField &field, const ExtensionSpec &spec, std::span<const Complex> samples)
{
  HerglotzReport report;
  for (const Complex z : samples) {
    if (!(z.imag() > 0.0)) {
      throw Error(ErrorCode::SampleOutsideUpperHalfPlane, "Herglotz samples must have Im z > 0");
    }
  }
  for (const Complex z : samples) {
    HerglotzEntry entry;
    entry.z = z;
    const WeylSample sample = weyl(field, z);
    entry.weyl_min_imag = dissipativity_margin(sample);
    entry.certified = entry.weyl_min_imag >= -kHerglotzSlack;
    if (spec.has_parameter()) {
      const Matrix inv = Eigen::PartialPivLU<Matrix>(boundary_operator(field, spec, z)).inverse();
      entry.inverse_max_imag = max_eigenvalue(imag_part(inv));
      entry.certified = entry.certified && *entry.inverse_max_imag <= kHerglotzSlack;
    }
    report.certified = report.certified && entry.certified;
    report.entries.push_back(entry);
  }
  return report;
}

DensitySample stieltjes_density(const KreinField &field, const ExtensionSpec &spec, double lambda, double epsilon)
{
  if (!spec.has_parameter()) {
    throw Error(ErrorCode::NotApplicable, "density of (Theta + Gamma)^{-1} is undefined without Theta");
  }
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::InvalidSpec, "epsilon must be positive");
  }
  const Complex z(lambda, epsilon);
  const Matrix bop = boundary_operator(field, spec, z);
  Eigen::JacobiSVD<Matrix> svd(bop);
  const auto &sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 0.0) || sv(0) / sv(sv.size() - 1) > kBoundaryConditionLimit) {
    throw Error(ErrorCode::SingularBoundaryOperator, "Theta + Gamma(lambda + i eps) is numerically singular");
  }
  const Matrix m = -Eigen::PartialPivLU<Matrix>(bop).inverse();

  DensitySample s;
  s.lambda = lambda;
  s.epsilon = epsilon;
  s.density = imag_part(m) / std::numbers::pi;
  s.trace_density = s.density.trace().real();
  const Matrix gz = gmap(field, z);
  const Matrix gzbar = gmap(field, std::conj(z));
  // tr[G(z) (Theta+Gamma)^{-1} G(conj z)^*] = -tr[M G(conj z)^* G(z)]
  const Complex correction_trace = (m * gzbar.adjoint() * gz).trace();
  s.perturbation_trace_density = correction_trace.imag() / std::numbers::pi;
  if (min_eigenvalue(s.density) < -kHerglotzSlack * std::max(1.0, max_abs(s.density))) {
    throw Error(ErrorCode::IdentityViolation, "density is not positive semidefinite; sign convention mismatch");
  }
  return s;
}

std::vector<DensityPoint> density_scan(const KreinField &field, const ExtensionSpec &spec, double a, double b,
                                       int grid_points, double epsilon)
{
  if (!(std::isfinite(a) && std::isfinite(b) && a < b) || grid_points < 2) {
    throw Error(ErrorCode::InvalidSpec, "density_scan needs a < b and at least two grid points");
  }
  const auto count = static_cast<std::size_t>(grid_points);
  std::vector<DensityPoint> points(count);
  parallel_for(count, [&](std::size_t j) {
    auto &p = points[j];
    p.lambda = j + 1 == count ? b : a + (b - a) * static_cast<double>(j) / static_cast<double>(count - 1);
    try {
      p.sample = stieltjes_density(field, spec, p.lambda, epsilon);
    } catch (const Error &e) {
      p.error = e.code();
      p.message = e.what();
    }
  });
  return points;
}

double residue_trace(const KreinField &field, const EigenResult &result)
{
  const Matrix gk = gmap(field, result.lambda) * result.kernel_basis;
  return Eigen::PartialPivLU<Matrix>(gk.adjoint() * gk).inverse().trace().real();
}

} // namespace krein
