#pragma once

#include <optional>
#include <string>
#include <vector>

#include "krein/boundary_triple.hpp"

namespace krein {

// Relative threshold for the kernel dimension of Theta + Gamma at a refined root.
inline constexpr double kKernelTolerance = 1e-8;

// Relative threshold for membership decisions at an arbitrary point; near rounding level
// so that points 1e-6 away from an eigenvalue far from sigma(A) are still resolved.
inline constexpr double kMembershipTolerance = 1e-11;

// Largest condition number of Theta + Gamma(z) accepted by krein_resolvent.
inline constexpr double kBoundaryConditionLimit = 1e12;

// Hermiticity tolerance of the recovered operator.
inline constexpr double kRecoveredHermitianTolerance = 1e-9;

// Selects a self-adjoint extension: either the boundary condition Theta zeta = tau phi_*
// with Hermitian Theta, or the relation {0} x h, which gives back A itself.
class ExtensionSpec {
public:
  enum class Kind { OperatorParameter, DistinguishedRelation };

  static ExtensionSpec parameter(Matrix theta);
  static ExtensionSpec distinguished();

  Kind kind() const { return kind_; }
  bool has_parameter() const { return kind_ == Kind::OperatorParameter; }

  // Throws NotApplicable for the distinguished relation.
  const Matrix &theta() const;

private:
  ExtensionSpec(Kind kind, Matrix theta) : kind_(kind), theta_(std::move(theta)) {}

  Kind kind_;
  Matrix theta_;
};

// Theta + Gamma(z). Throws NotApplicable for the distinguished relation.
Matrix boundary_operator(const KreinField &field, const ExtensionSpec &spec, Complex z);

// R(z) + G(z) (Theta + Gamma(z))^{-1} G(conj z)^*, or R(z) for the distinguished relation.
Matrix krein_resolvent(const KreinField &field, const ExtensionSpec &spec, Complex z);

// Same formula with an externally supplied Weyl sample in place of Gamma(z).
Matrix krein_resolvent(const KreinField &field, const Matrix &theta, const WeylSample &sample);

// R_Theta(z) X without forming the n x n resolvent.
Matrix krein_resolvent_apply(const KreinField &field, const ExtensionSpec &spec, Complex z, const Matrix &x);
Matrix krein_resolvent_apply(const KreinField &field, const Matrix &theta, const WeylSample &sample, const Matrix &x);

enum class Membership { InResolventSet, InSpectrum };

Membership resolvent_membership(const KreinField &field, const ExtensionSpec &spec, Complex z);

// Smallest singular value of Theta + Gamma(z) and the scale it is compared against.
struct SingularityProbe {
  double smallest = 0.0;
  double scale = 0.0;
  bool singular() const { return !(smallest > kMembershipTolerance * scale); }
};

SingularityProbe probe_boundary_operator(const KreinField &field, const ExtensionSpec &spec, Complex z);

struct EigenResult {
  double lambda = 0.0;
  Index multiplicity = 0;
  Matrix kernel_basis; // k x m, orthonormal columns spanning Ker(Theta + Gamma(lambda))
  Matrix eigenvectors; // n x m, columns G(lambda) zeta_j
};

struct RootFailure {
  double lower = 0.0;
  double upper = 0.0;
  std::string reason;
};

struct EigenScan {
  std::vector<EigenResult> eigenvalues; // ascending
  std::vector<RootFailure> failures;
  std::vector<double> grid;
  std::vector<double> smallest_singular_value;
};

// Eigenvalues of the extension inside [a, b], which must lie in the resolvent set of A.
// Scans Theta + Gamma on a uniform grid and brackets every change of its inertia (the
// count of negative eigenvalues), narrowing each bracket by bisection on the inertia and
// then by golden-section search on the smallest singular value.
EigenScan eigen_solve(const KreinField &field, const ExtensionSpec &spec, double a, double b, int grid_points);

// Radius beyond which Theta + Gamma(lambda) is provably invertible for real lambda.
double spectral_search_bound(const KreinField &field, const ExtensionSpec &spec);

// eigen_solve over every gap of sigma(A) inside [-bound, bound], each gap shrunk by margin.
EigenScan eigen_solve_resolvent_set(const KreinField &field, const ExtensionSpec &spec, double margin,
                                    int grid_points);

// max_j |Theta zeta_j - tau phi_*j| for phi_* = (G(lambda) - G_*) zeta_j.
double boundary_condition_residual(const KreinField &field, const ExtensionSpec &spec, const EigenResult &result);

// Extension operator recovered from its resolvent: z - (R_Theta(z))^{-1}, hermitized.
BaseOperator recover_operator(const KreinField &field, const ExtensionSpec &spec, Complex z);

// Numerical rank of (recovered operator - A); never exceeds k.
Index rank_of_perturbation(const KreinField &field, const ExtensionSpec &spec);

} // namespace krein
