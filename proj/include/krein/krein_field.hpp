#pragma once

#include "krein/operator_core.hpp"

namespace krein {

// Relative singular-value floor for surjectivity of the trace map.
inline constexpr double kTraceRankTolerance = 1e-10;

// Residual above which build_field reports a numerical breakdown.
inline constexpr double kFieldIdentityTolerance = 1e-10;

// A surjective trace map tau : C^n -> C^k. Row j acts on phi as (row_j . phi).
class TraceMap {
public:
  // Throws RankDeficientTrace unless the rows are linearly independent.
  explicit TraceMap(Matrix rows);

  Index aux_dim() const { return rows_.rows(); }
  Index domain_dim() const { return rows_.cols(); }
  const Matrix &matrix() const { return rows_; }

  Vector apply(const Vector &phi) const;

private:
  Matrix rows_;
};

// The operator family built from A and tau at the fixed probes z = +-i:
//   R = R(i),  G = G(-i),  G_* = (G(i) + G(-i)) / 2,  RG = R(i) G(-i).
// R itself is not materialized (it is n x n); apply_r / r() provide it on demand.
class KreinField {
public:
  const BaseOperator &base() const { return base_; }
  const TraceMap &trace() const { return trace_; }
  Index dim() const { return base_.dim(); }
  Index aux_dim() const { return trace_.aux_dim(); }

  const Matrix &g_minus() const { return g_minus_; }
  const Matrix &g_plus() const { return g_plus_; }
  const Matrix &g_star() const { return g_star_; }
  const Matrix &rg() const { return rg_; }

  // tau G_*, the constant part of the Weyl function. Hermitian.
  const Matrix &weyl_offset() const { return weyl_offset_; }

  Matrix apply_r(const Matrix &x) const;
  Matrix r() const;

  // Residuals measured at construction, relative to max(1, |G(-i)|).
  double rg_identity_residual() const { return rg_residual_; }
  double gstar_identity_residual() const { return gstar_residual_; }

private:
  friend KreinField build_field(BaseOperator base, TraceMap trace);

  KreinField(BaseOperator base, TraceMap trace) : base_(std::move(base)), trace_(std::move(trace)) {}

  BaseOperator base_;
  TraceMap trace_;
  Matrix g_minus_;
  Matrix g_plus_;
  Matrix g_star_;
  Matrix rg_;
  Matrix weyl_offset_;
  double rg_residual_ = 0.0;
  double gstar_residual_ = 0.0;
};

KreinField build_field(BaseOperator base, TraceMap trace);

// G(z) = (tau R(conj z))^*, an n x k matrix.
Matrix gmap(const KreinField &field, Complex z);

// |(z - w) R(w) G(z) - (G(w) - G(z))|_F
double check_resolvent_identity(const KreinField &field, Complex z, Complex w);

struct DensenessReport {
  // dim(D(A) n Ran G(z)); every vector is in D(A) for a matrix model, so this is rank G(z).
  Index intersection_dim = 0;
  // min over unit zeta of asin(|G zeta| / |G zeta|_+). Shrinks towards zero as a
  // lattice model approaches a genuinely singular trace.
  double smallest_angle = 0.0;
  bool finite_dimensional_surrogate = true;
};

DensenessReport denseness_diagnostic(const KreinField &field, Complex z);

// Re-expresses tau so that its Riesz representers in the graph inner product are
// orthonormal. The kernel is unchanged.
TraceMap orthonormalize_in_graph_metric(const BaseOperator &base, const TraceMap &trace);

} // namespace krein
