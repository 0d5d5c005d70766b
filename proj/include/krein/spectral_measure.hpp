#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "krein/error.hpp"
#include "krein/extension_solver.hpp"

namespace krein {

inline constexpr double kHerglotzSlack = 1e-10;

struct HerglotzEntry {
  Complex z;
  double weyl_min_imag = 0.0;                   // min eig Im Gamma(z), must be >= -slack
  std::optional<double> inverse_max_imag;       // max eig Im (Theta + Gamma(z))^{-1}, must be <= slack
  bool certified = false;
};

struct HerglotzReport {
  std::vector<HerglotzEntry> entries;
  bool certified = true;
};

// Certifies Im Gamma(z) >= 0 and Im (Theta + Gamma(z))^{-1} <= 0 on upper half-plane samples.
HerglotzReport herglotz_certify(const KreinField &field, const ExtensionSpec &spec, std::span<const Complex> samples);

// Stieltjes-inversion density of (Theta + Gamma)^{-1} at lambda:
// (1/pi) Im M with M = -(Theta + Gamma(lambda + i eps))^{-1}.
struct DensitySample {
  double lambda = 0.0;
  double epsilon = 0.0;
  Matrix density; // k x k, Hermitian positive semidefinite
  double trace_density = 0.0;
  // (1/pi) Im tr[-(Theta + Gamma)^{-1} G(conj z)^* G(z)]: the trace density of the
  // Krein correction G(z)(Theta + Gamma(z))^{-1}G(conj z)^*, i.e. the part of the
  // extension's spectral measure carried by the boundary term. Near an isolated
  // eigenvalue in the resolvent set of A it integrates to the multiplicity.
  double perturbation_trace_density = 0.0;
};

DensitySample stieltjes_density(const KreinField &field, const ExtensionSpec &spec, double lambda, double epsilon);

struct DensityPoint {
  double lambda = 0.0;
  std::optional<DensitySample> sample;
  std::optional<ErrorCode> error;
  std::string message;
};

// Uniform grid over [a, b]; per-point failures are recorded, not thrown.
std::vector<DensityPoint> density_scan(const KreinField &field, const ExtensionSpec &spec, double a, double b,
                                       int grid_points, double epsilon);

// Trace of the residue of (Theta + Gamma)^{-1} at an eigenvalue:
// tr (K^* G(lambda)^* G(lambda) K)^{-1} for the kernel basis K.
double residue_trace(const KreinField &field, const EigenResult &result);

} // namespace krein
