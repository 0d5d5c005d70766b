#include <gtest/gtest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <sstream>

#include "krein/error.hpp"
#include "krein/extension_solver.hpp"
#include "krein/format.hpp"
#include "krein/models.hpp"
#include "oracles.hpp"

using namespace krein;

namespace {

ModelSpec spec_of(ModelKind kind)
{
  ModelSpec s;
  s.kind = kind;
  return s;
}

ModelSpec lattice(Index n, double site = 0.0)
{
  ModelSpec s = spec_of(ModelKind::LatticeLaplacianDelta);
  s.n = n;
  s.site = site;
  return s;
}

ErrorCode code_of(const std::function<void()> &fn)
{
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::NotApplicable;
}

// Bound state of the infinite lattice with a site potential -alpha/h:
// E = -4 sinh^2(kappa h / 2) / h^2 with sinh(kappa h) = alpha h / 2.
double discrete_delta_energy(double alpha, double h)
{
  const double kh = std::asinh(alpha * h / 2.0);
  const double s = std::sinh(kh / 2.0);
  return -4.0 * s * s / (h * h);
}

Model read_back(const Model &m)
{
  std::stringstream ss;
  write_model(ss, m.op, m.trace, m.theta);
  return read_model(ss);
}

} // namespace

TEST(BuildModel, Fixtures)
{
  const Model s = build_model(spec_of(ModelKind::ScalarZero));
  EXPECT_EQ(s.op.to_dense(), Matrix::Zero(1, 1));
  EXPECT_EQ(s.trace.matrix(), Matrix::Ones(1, 1));

  const Model d = build_model(spec_of(ModelKind::DiagPair));
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = -1.0;
  EXPECT_EQ(d.op.to_dense(), a);
  EXPECT_EQ(d.trace.matrix(), Matrix::Ones(1, 2));

  ModelSpec two = spec_of(ModelKind::DiagPair);
  two.k = 2;
  EXPECT_EQ(build_model(two).trace.aux_dim(), 2);
  two.k = 3;
  EXPECT_EQ(code_of([&] { build_model(two); }), ErrorCode::InvalidSpec);
}

TEST(BuildModel, RandomIsSeededAndHermitian)
{
  ModelSpec r = spec_of(ModelKind::RandomHermitian);
  r.n = 8;
  r.k = 3;
  r.seed = 7;
  const Model m1 = build_model(r);
  const Model m2 = build_model(r);
  EXPECT_EQ(m1.op.to_dense(), m2.op.to_dense());
  EXPECT_EQ(m1.trace.matrix(), m2.trace.matrix());
  EXPECT_EQ(hermiticity_defect(m1.op.to_dense()), 0.0);
  r.seed = 8;
  EXPECT_NE(build_model(r).op.to_dense(), m1.op.to_dense());
  r.k = 9;
  EXPECT_EQ(code_of([&] { build_model(r); }), ErrorCode::InvalidSpec);
  r.k = 1;
  r.n = 0;
  EXPECT_EQ(code_of([&] { build_model(r); }), ErrorCode::InvalidSpec);
}

TEST(BuildModel, LatticeStructure)
{
  const Model m = build_model(lattice(2000));
  const double h = 40.0 / 2001.0;
  EXPECT_DOUBLE_EQ(m.spacing, h);
  EXPECT_EQ(m.op.kind(), OperatorKind::Tridiagonal);
  EXPECT_EQ(m.op.dim(), 2000);
  EXPECT_DOUBLE_EQ(m.op.diagonal()(0), 2.0 / (h * h));
  EXPECT_EQ(m.op.offdiagonal()(0), Complex(-1.0 / (h * h), 0.0));
  EXPECT_EQ(m.trace.aux_dim(), 1);
  // x0 = 0 is not a grid point for n = 2000; the nearest interior point is used
  const double x = -20.0 + (m.site_index + 1) * h;
  EXPECT_LE(std::abs(x), h / 2.0 + 1e-12);
  EXPECT_EQ(m.trace.matrix()(0, m.site_index), Complex(1.0));
  EXPECT_EQ(m.trace.matrix().cwiseAbs().sum(), 1.0);
}

TEST(BuildModel, LatticeFromSpacing)
{
  ModelSpec s = spec_of(ModelKind::LatticeLaplacianDelta);
  s.spacing = 20.0 / 500.0;
  const Model m = build_model(s);
  EXPECT_EQ(m.op.dim(), 999);
  EXPECT_EQ(m.site_index, 499); // x = 0 exactly
  s.spacing = 0.3;
  EXPECT_EQ(code_of([&] { build_model(s); }), ErrorCode::InvalidSpec);
  s.spacing = 0.0;
  s.n = 0;
  EXPECT_EQ(code_of([&] { build_model(s); }), ErrorCode::InvalidSpec);
  EXPECT_EQ(code_of([&] { build_model(lattice(100, 25.0)); }), ErrorCode::InvalidSpec);
  ModelSpec bad = lattice(100);
  bad.half_width = -1.0;
  EXPECT_EQ(code_of([&] { build_model(bad); }), ErrorCode::InvalidSpec);
}

TEST(BuildModel, EveryModelBuildsAField)
{
  ModelSpec r = spec_of(ModelKind::RandomHermitian);
  r.n = 5;
  r.k = 2;
  for (const ModelSpec &s : {spec_of(ModelKind::ScalarZero), spec_of(ModelKind::DiagPair), r, lattice(300)}) {
    const Model m = build_model(s);
    EXPECT_NO_THROW(build_field(m.op, m.trace));
  }
}

TEST(ModelKindNames, RoundTrip)
{
  for (ModelKind k : {ModelKind::ScalarZero, ModelKind::DiagPair, ModelKind::RandomHermitian,
                      ModelKind::LatticeLaplacianDelta, ModelKind::FromFile}) {
    EXPECT_EQ(parse_model_kind(to_string(k)), k);
  }
  EXPECT_EQ(code_of([] { parse_model_kind("cubic"); }), ErrorCode::InvalidSpec);
}

TEST(ContinuumReference, Values)
{
  EXPECT_EQ(continuum_delta_reference(2.0), -1.0);
  EXPECT_EQ(continuum_delta_reference(1.0), -0.25);
  double prev = -1.0;
  for (double a : {1.0, 0.1, 1e-3, 1e-6}) {
    const double e = continuum_delta_reference(a);
    EXPECT_LT(e, 0.0);
    EXPECT_GT(e, prev);
    prev = e;
  }
  EXPECT_EQ(code_of([] { continuum_delta_reference(0.0); }), ErrorCode::InvalidSpec);
}

TEST(Calibration, DiagPairRankOne)
{
  const Model m = build_model(spec_of(ModelKind::DiagPair));
  const KreinField f = build_field(m.op, m.trace);
  const ExtensionSpec spec = calibrate_theta_for_rank_one(f, 0.5);
  EXPECT_NEAR(spec.theta()(0, 0).real(), 2.0, 1e-10);
  EXPECT_EQ(code_of([&] { calibrate_theta_for_rank_one(f, 0.0); }), ErrorCode::CalibrationFailure);
}

TEST(Calibration, LatticeZeroCouplingFails)
{
  const Model m = build_model(lattice(199));
  const KreinField f = build_field(m.op, m.trace);
  EXPECT_EQ(code_of([&] { calibrate_theta_for_coupling(m, f, 0.0); }), ErrorCode::CalibrationFailure);
  const Model d = build_model(spec_of(ModelKind::DiagPair));
  EXPECT_EQ(code_of([&] { calibrate_theta_for_coupling(d, build_field(d.op, d.trace), 2.0); }),
            ErrorCode::CalibrationFailure);
}

TEST(Calibration, LatticeRecoversSitePotential)
{
  const Model m = build_model(lattice(199));
  const KreinField f = build_field(m.op, m.trace);
  const ExtensionSpec spec = calibrate_theta_for_coupling(m, f, 2.0);
  Matrix target = m.op.to_dense();
  target(m.site_index, m.site_index) -= 2.0 / m.spacing;
  const Matrix got = recover_operator(f, spec, Complex(0.0, 1.0)).to_dense();
  EXPECT_LE(max_abs(got - target), 1e-8 * max_abs(target));
}

TEST(Calibration, LatticeGroundStateNearContinuumLimit)
{
  const Model m = build_model(lattice(2000));
  const KreinField f = build_field(m.op, m.trace);
  const ExtensionSpec spec = calibrate_theta_for_coupling(m, f, 2.0);
  const double bottom = f.base().eigenvalues()(0);
  const EigenScan scan = eigen_solve(f, spec, -spectral_search_bound(f, spec), bottom - 1e-6, 200);
  ASSERT_FALSE(scan.eigenvalues.empty());
  const double lowest = scan.eigenvalues.front().lambda;

  // oracle: tridiagonal diagonalisation of A - (alpha/h) e e^*
  RealVector diag = m.op.diagonal();
  diag(m.site_index) -= 2.0 / m.spacing;
  const double direct = diagonalize(BaseOperator::tridiagonal(diag, m.op.offdiagonal())).values(0);
  EXPECT_NEAR(lowest, direct, 1e-10 * std::abs(direct));
  EXPECT_NEAR(lowest, discrete_delta_energy(2.0, m.spacing), 1e-9);
  EXPECT_NEAR(lowest, -1.0, 5.0 * m.spacing);
}

TEST(ModelFile, DoubleFormatRoundTrip)
{
  for (double x : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 5e-324, -0.0, 1.0}) {
    const double y = parse_double(format_double(x));
    EXPECT_EQ(std::memcmp(&x, &y, sizeof x), 0) << format_double(x);
  }
  EXPECT_THROW(parse_double("1.5x"), Error);
  EXPECT_THROW(parse_double(""), Error);
}

TEST(ModelFile, BitExactRoundTrip)
{
  ModelSpec r = spec_of(ModelKind::RandomHermitian);
  r.n = 7;
  r.k = 3;
  r.seed = 99;
  Model dense = build_model(r);
  std::mt19937_64 rng(1);
  dense.theta = random_hermitian(3, rng);
  const Model back = read_back(dense);
  EXPECT_EQ(back.op.to_dense(), dense.op.to_dense());
  EXPECT_EQ(back.trace.matrix(), dense.trace.matrix());
  ASSERT_TRUE(back.theta.has_value());
  EXPECT_EQ(*back.theta, *dense.theta);

  const Model tri = build_model(lattice(50, 3.3));
  const Model tri_back = read_back(tri);
  EXPECT_EQ(tri_back.op.kind(), OperatorKind::Tridiagonal);
  EXPECT_EQ(tri_back.op.diagonal(), tri.op.diagonal());
  EXPECT_EQ(tri_back.op.offdiagonal(), tri.op.offdiagonal());
  EXPECT_EQ(tri_back.trace.matrix(), tri.trace.matrix());
  EXPECT_FALSE(tri_back.theta.has_value());
}

TEST(ModelFile, LoadThroughBuildModel)
{
  const auto path = std::filesystem::temp_directory_path() / "krein_models_test.txt";
  const Model d = build_model(spec_of(ModelKind::DiagPair));
  save_model(path.string(), d);
  ModelSpec f = spec_of(ModelKind::FromFile);
  f.path = path.string();
  const Model back = build_model(f);
  EXPECT_EQ(back.op.to_dense(), d.op.to_dense());
  EXPECT_EQ(back.spec.kind, ModelKind::FromFile);
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([&] { build_model(f); }), ErrorCode::FileFormatError);
}

TEST(ModelFile, MalformedInputs)
{
  auto parse = [](const std::string &text) {
    std::istringstream is(text);
    return read_model(is);
  };
  const std::string ok = "krein-model 1\nkind dense\nn 1\nk 1\noperator\n0 0\ntrace\n1 0\nend\n";
  EXPECT_NO_THROW(parse(ok));
  EXPECT_NO_THROW(parse("# comment\n" + ok));
  EXPECT_EQ(code_of([&] { parse("krein-model 2\n"); }), ErrorCode::FileFormatError);
  EXPECT_EQ(code_of([&] { parse("hello\n"); }), ErrorCode::FileFormatError);
  EXPECT_EQ(code_of([&] { parse("krein-model 1\nkind dense\nn 1\nk 1\noperator\n0\n"); }),
            ErrorCode::FileFormatError);
  EXPECT_EQ(code_of([&] { parse("krein-model 1\nkind dense\nn 1\nk 1\noperator\n0 zero\ntrace\n1 0\nend\n"); }),
            ErrorCode::FileFormatError);
  EXPECT_EQ(code_of([&] { parse("krein-model 1\nkind dense\nn 1\nk 1\noperator\n0 0\ntrace\n1 0\n"); }),
            ErrorCode::FileFormatError);
  EXPECT_EQ(code_of([&] { parse("krein-model 1\nkind dense\nn 2\nk 2\noperator\n0 0 0 0\n0 0 0 0\n"
                                "trace\n1 0 1 0\n2 0 2 0\nend\n"); }),
            ErrorCode::RankDeficientTrace);
  EXPECT_EQ(code_of([&] { parse("krein-model 1\nkind dense\nn 2\nk 1\noperator\n0 0 1 0\n0 0 0 0\n"
                                "trace\n1 0 1 0\nend\n"); }),
            ErrorCode::NotHermitian);
}
