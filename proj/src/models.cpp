#include "krein/models.hpp"

#include <cmath>
#include <sstream>

#include "krein/error.hpp"

namespace krein {

std::string_view to_string(ModelKind kind)
{
  switch (kind) {
  case ModelKind::ScalarZero: return "scalarZero";
  case ModelKind::DiagPair: return "diagPair";
  case ModelKind::RandomHermitian: return "randomHermitian";
  case ModelKind::LatticeLaplacianDelta: return "latticeLaplacianDelta";
  case ModelKind::FromFile: return "fromFile";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name)
{
  for (auto kind : {ModelKind::ScalarZero, ModelKind::DiagPair, ModelKind::RandomHermitian,
                    ModelKind::LatticeLaplacianDelta, ModelKind::FromFile}) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  throw Error(ErrorCode::InvalidSpec, "unknown model kind '" + std::string(name) + "'");
}

Matrix random_complex(Index rows, Index cols, std::mt19937_64 &rng)
{
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

Matrix random_hermitian(Index n, std::mt19937_64 &rng)
{
  const Matrix x = random_complex(n, n, rng);
  return hermitian_part(x);
}

namespace {

Model lattice_model(const ModelSpec &spec)
{
  const double L = spec.half_width;
  if (!(L > 0.0)) {
    throw Error(ErrorCode::InvalidSpec, "lattice half-width must be positive");
  }
  Index n = spec.n;
  double h = spec.spacing;
  if (h > 0.0) {
    const double cells = 2.0 * L / h;
    if (std::abs(cells - std::round(cells)) > 1e-9 * cells) {
      throw Error(ErrorCode::InvalidSpec, "lattice spacing must divide the box width");
    }
    n = static_cast<Index>(std::llround(cells)) - 1;
  } else {
    if (n < 1) {
      throw Error(ErrorCode::InvalidSpec, "lattice needs n >= 1 or a positive spacing");
    }
    h = 2.0 * L / static_cast<double>(n + 1);
  }
  if (n < 2) {
    throw Error(ErrorCode::InvalidSpec, "lattice needs at least two interior points");
  }
  if (!(spec.site > -L && spec.site < L)) {
    throw Error(ErrorCode::InvalidSpec, "interaction site must lie inside (-L, L)");
  }
  // Interior points x_j = -L + (j + 1) h; the site snaps to the nearest one.
  const Index site = std::clamp<Index>(static_cast<Index>(std::llround((spec.site + L) / h)) - 1, 0, n - 1);

  const double inv_h2 = 1.0 / (h * h);
  RealVector diag = RealVector::Constant(n, 2.0 * inv_h2);
  Vector off = Vector::Constant(n - 1, Complex(-inv_h2, 0.0));
  Matrix tau = Matrix::Zero(1, n);
  tau(0, site) = 1.0;

  Model model{spec, BaseOperator::tridiagonal(std::move(diag), std::move(off)), TraceMap(std::move(tau)),
              std::nullopt, h, site};
  model.spec.n = n;
  model.spec.spacing = h;
  return model;
}

} // namespace

Model build_model(const ModelSpec &spec)
{
  switch (spec.kind) {
  case ModelKind::ScalarZero:
    return Model{spec, BaseOperator::dense(Matrix::Zero(1, 1)), TraceMap(Matrix::Ones(1, 1)), std::nullopt};
  case ModelKind::DiagPair: {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = -1.0;
    Matrix tau;
    if (spec.k == 1) {
      tau = Matrix::Ones(1, 2);
    } else if (spec.k == 2) {
      tau = Matrix::Ones(2, 2);
      tau(1, 1) = -1.0;
    } else {
      throw Error(ErrorCode::InvalidSpec, "diagPair supports k = 1 or k = 2");
    }
    return Model{spec, BaseOperator::dense(std::move(a)), TraceMap(std::move(tau)), std::nullopt};
  }
  case ModelKind::RandomHermitian: {
    if (spec.n < 1 || spec.k < 1 || spec.k > spec.n) {
      throw Error(ErrorCode::InvalidSpec, "randomHermitian needs n >= 1 and 1 <= k <= n");
    }
    std::mt19937_64 rng(spec.seed);
    Matrix a = random_hermitian(spec.n, rng);
    Matrix tau = random_complex(spec.k, spec.n, rng);
    return Model{spec, BaseOperator::dense(std::move(a)), TraceMap(std::move(tau)), std::nullopt};
  }
  case ModelKind::LatticeLaplacianDelta:
    return lattice_model(spec);
  case ModelKind::FromFile: {
    Model model = load_model(spec.path);
    model.spec = spec;
    return model;
  }
  }
  throw Error(ErrorCode::InvalidSpec, "unhandled model kind");
}

double continuum_delta_reference(double alpha)
{
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::InvalidSpec, "continuum delta reference needs alpha > 0");
  }
  return -alpha * alpha / 4.0;
}

ExtensionSpec calibrate_theta_for_rank_one(const KreinField &field, double coupling)
{
  if (field.aux_dim() != 1) {
    throw Error(ErrorCode::CalibrationFailure, "rank-one calibration needs a one-dimensional trace");
  }
  if (coupling == 0.0) {
    throw Error(ErrorCode::CalibrationFailure, "zero coupling gives A itself; no finite Theta");
  }
  const BaseOperator &base = field.base();
  const Matrix &tau = field.trace().matrix();

  // Target operator A + c tau^* tau, kept tridiagonal when tau is a single site.
  Index nonzero = 0;
  Index site = 0;
  for (Index j = 0; j < tau.cols(); ++j) {
    if (tau(0, j) != Complex(0.0)) {
      ++nonzero;
      site = j;
    }
  }
  const BaseOperator target = [&] {
    if (base.kind() == OperatorKind::Tridiagonal && nonzero == 1) {
      RealVector diag = base.diagonal();
      diag(site) += coupling * std::norm(tau(0, site));
      return BaseOperator::tridiagonal(std::move(diag), base.offdiagonal());
    }
    return BaseOperator::dense(hermitian_part(base.to_dense() + coupling * tau.adjoint() * tau));
  }();

  // tau R_Theta(z) tau^* = g + g^2 / (theta + Gamma(z)) with g = tau R(z) tau^*.
  auto scalar_pair = [&](Complex z) {
    const Complex g = (tau * base.solve(z, tau.adjoint()))(0, 0);
    const Complex t = (tau * target.solve(z, tau.adjoint()))(0, 0);
    return std::pair{g, t};
  };
  const Complex probe = kI * std::max(1.0, base.norm());
  const auto [g, t] = scalar_pair(probe);
  if (t == g) {
    throw Error(ErrorCode::CalibrationFailure, "target resolvent coincides with the unperturbed one");
  }
  const Complex theta_c = g * g / (t - g) - weyl(field, probe).gamma(0, 0);
  const double theta = theta_c.real();
  if (std::abs(theta_c.imag()) > 1e-8 * std::max(1.0, std::abs(theta))) {
    std::ostringstream msg;
    msg << "matched Theta has imaginary part " << theta_c.imag();
    throw Error(ErrorCode::CalibrationFailure, msg.str());
  }

  const Complex check_z = Complex(0.5, 1.0) * std::max(1.0, base.norm());
  const auto [g2, t2] = scalar_pair(check_z);
  const Complex predicted = g2 + g2 * g2 / (theta + weyl(field, check_z).gamma(0, 0));
  const double residual = std::abs(predicted - t2) / std::max(std::abs(t2), 1e-300);
  if (!(residual <= 1e-8)) {
    std::ostringstream msg;
    msg << "calibrated resolvent mismatch " << residual;
    throw Error(ErrorCode::CalibrationFailure, msg.str());
  }
  return ExtensionSpec::parameter(Matrix::Constant(1, 1, Complex(theta, 0.0)));
}

ExtensionSpec calibrate_theta_for_coupling(const Model &lattice, const KreinField &field, double alpha)
{
  if (lattice.spec.kind != ModelKind::LatticeLaplacianDelta || !(lattice.spacing > 0.0)) {
    throw Error(ErrorCode::CalibrationFailure, "coupling calibration needs a lattice delta model");
  }
  return calibrate_theta_for_rank_one(field, -alpha / lattice.spacing);
}

} // namespace krein
