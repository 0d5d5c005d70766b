#pragma once

#include "krein/krein_field.hpp"

namespace krein {

// An element phi = phi_* + G_* zeta of the adjoint's domain, kept as the pair.
// In a matrix model the split of phi is not unique, so it is never recovered from phi.
struct DomainElement {
  Vector regular; // phi_*
  Vector charge;  // zeta
};

// phi_* + G_* zeta
Vector represented_vector(const KreinField &field, const DomainElement &el);

// A phi_* + RG zeta
Vector adjoint_action(const KreinField &field, const DomainElement &el);

// -tau phi_*
Vector gamma1(const KreinField &field, const DomainElement &el);

// zeta
Vector gamma2(const KreinField &field, const DomainElement &el);

// |<A* phi, psi> - <phi, A* psi> - ([g1 phi, g2 psi] - [g2 phi, g1 psi])|
double greens_residual(const KreinField &field, const DomainElement &el1, const DomainElement &el2);

struct WeylSample {
  Complex z;
  Matrix gamma; // k x k
};

// Gamma(z) = tau (G_* - G(z))
WeylSample weyl(const KreinField &field, Complex z);

// |Gamma(z) - Gamma(w)^* - (z - conj w) G(w)^* G(z)|_F
double q_function_residual(const KreinField &field, Complex z, Complex w);

// Smallest eigenvalue of Im Gamma(z).
double dissipativity_margin(const WeylSample &sample);

struct WeylCheck {
  double q_residual = 0.0;           // against the reference sample at w = i
  double dissipativity_margin = 0.0; // only meaningful for Im z > 0
};

WeylCheck check_weyl_sample(const KreinField &field, const WeylSample &sample);

// (z, Gamma(z) + C) for a Hermitian C.
WeylSample weyl_shift(const WeylSample &sample, const Matrix &shift);

// Element with gamma1 = target1 and gamma2 = target2; phi_* is the minimum-norm
// solution of tau phi_* = -target1.
DomainElement surjectivity_witness(const KreinField &field, const Vector &target1, const Vector &target2);

} // namespace krein
