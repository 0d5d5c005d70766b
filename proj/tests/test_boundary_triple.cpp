#include <gtest/gtest.h>

#include <random>

#include "krein/boundary_triple.hpp"
#include "krein/error.hpp"
#include "krein/models.hpp"
#include "oracles.hpp"

using namespace krein;

namespace {

KreinField field_of(ModelKind kind, Index n = 0, Index k = 1, std::uint64_t seed = 42)
{
  ModelSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.k = k;
  spec.seed = seed;
  const Model m = build_model(spec);
  return build_field(m.op, m.trace);
}

Vector vec(std::initializer_list<Complex> xs)
{
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const Complex x : xs) v(i++) = x;
  return v;
}

} // namespace

TEST(AdjointAction, Examples)
{
  const KreinField s = field_of(ModelKind::ScalarZero);
  EXPECT_EQ(adjoint_action(s, {vec({1}), vec({0})})(0), Complex(0.0));
  EXPECT_NEAR(std::abs(adjoint_action(s, {vec({0}), vec({1})})(0) - 1.0), 0.0, 1e-15);

  const KreinField d = field_of(ModelKind::DiagPair);
  const Matrix a = d.base().to_dense();
  const Matrix tau = d.trace().matrix();
  const Matrix rg = 0.5 * kI * (oracle::gmap(a, tau, kI) - oracle::gmap(a, tau, -kI));
  const Vector expected = a * vec({1, 1}) + 2.0 * rg.col(0);
  EXPECT_LE((adjoint_action(d, {vec({1, 1}), vec({2})}) - expected).norm(), 1e-14);
}

TEST(AdjointAction, DimensionMismatch)
{
  const KreinField d = field_of(ModelKind::DiagPair);
  EXPECT_THROW(adjoint_action(d, {vec({1}), vec({0})}), Error);
  EXPECT_THROW(gamma1(d, {vec({1, 2, 3}), vec({0})}), Error);
  EXPECT_THROW(greens_residual(d, {vec({1, 1}), vec({0, 0})}, {vec({1, 1}), vec({0})}), Error);
}

TEST(BoundaryMaps, Examples)
{
  const KreinField d = field_of(ModelKind::DiagPair);
  EXPECT_EQ(gamma1(d, {vec({0, 0}), vec({5})}).norm(), 0.0);
  EXPECT_EQ(gamma1(d, {vec({1, 0}), vec({0})})(0), Complex(-1.0));

  const KreinField s = field_of(ModelKind::ScalarZero);
  EXPECT_EQ(gamma1(s, {vec({3}), vec({5})})(0), Complex(-3.0));
  EXPECT_EQ(gamma2(s, {vec({3}), vec({5})})(0), Complex(5.0));
  EXPECT_EQ(gamma2(s, {vec({3}), vec({0})})(0), Complex(0.0));
  EXPECT_EQ(gamma2(s, {vec({-8}), vec({5})}), gamma2(s, {vec({3}), vec({5})}));
}

TEST(GreensIdentity, Examples)
{
  const KreinField f = field_of(ModelKind::RandomHermitian, 6, 2, 42);
  std::mt19937_64 rng(42);
  for (int t = 0; t < 50; ++t) {
    const DomainElement e1{random_complex(6, 1, rng), random_complex(2, 1, rng)};
    const DomainElement e2{random_complex(6, 1, rng), random_complex(2, 1, rng)};
    EXPECT_LE(greens_residual(f, e1, e2), 1e-10);
    EXPECT_LE(greens_residual(f, e1, e1), 1e-12);
    const DomainElement r1{e1.regular, Vector::Zero(2)};
    const DomainElement r2{e2.regular, Vector::Zero(2)};
    EXPECT_LE(greens_residual(f, r1, r2), 1e-12);
  }
}

TEST(GreensIdentity, NontrivialBoundaryForm)
{
  // Without the boundary term the identity would fail: A*_N is not symmetric.
  const KreinField f = field_of(ModelKind::DiagPair);
  const DomainElement e1{vec({1, 0}), vec({1})};
  const DomainElement e2{vec({0, 2}), vec({Complex(0, 1)})};
  const Vector phi = represented_vector(f, e1);
  const Vector psi = represented_vector(f, e2);
  const Complex lhs = adjoint_action(f, e1).dot(psi) - phi.dot(adjoint_action(f, e2));
  EXPECT_GT(std::abs(lhs), 1e-3);
  EXPECT_LE(greens_residual(f, e1, e2), 1e-14);
}

TEST(Weyl, ClosedForms)
{
  const KreinField s = field_of(ModelKind::ScalarZero);
  EXPECT_NEAR(std::abs(weyl(s, 2.0 * kI).gamma(0, 0) - Complex(0, 0.5)), 0.0, 1e-15);

  const KreinField d = field_of(ModelKind::DiagPair);
  EXPECT_NEAR(std::abs(weyl(d, kI).gamma(0, 0) - kI), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(weyl(d, Complex(3.0, 0.0)).gamma(0, 0) - (-0.75)), 0.0, 1e-15);
}

TEST(Weyl, MatchesOracleAndQIdentity)
{
  const KreinField f = field_of(ModelKind::RandomHermitian, 8, 3, 13);
  const Matrix a = f.base().to_dense();
  const Matrix tau = f.trace().matrix();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 20; ++t) {
    const Complex z(u(rng), u(rng));
    const Complex w(u(rng), t < 10 ? std::abs(u(rng)) + 0.1 : u(rng));
    EXPECT_LE((weyl(f, z).gamma - oracle::weyl(a, tau, z)).norm(), 1e-11);
    EXPECT_LE(q_function_residual(f, z, w), 1e-10);
  }
}

TEST(Weyl, Dissipativity)
{
  const KreinField f = field_of(ModelKind::RandomHermitian, 8, 3, 21);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.1, 10.0);
  for (int t = 0; t < 20; ++t) {
    const Complex z(re(rng), im(rng));
    const WeylSample s = weyl(f, z);
    EXPECT_GE(dissipativity_margin(s), -1e-10);
    const Matrix g = gmap(f, z);
    EXPECT_LE((imag_part(s.gamma) - z.imag() * g.adjoint() * g).norm(), 1e-10);
    const double c = Eigen::JacobiSVD<Matrix>(g).singularValues().minCoeff();
    EXPECT_GE(dissipativity_margin(s), z.imag() * c * c * (1.0 - 1e-8));
    const WeylCheck check = check_weyl_sample(f, s);
    EXPECT_LE(check.q_residual, 1e-10);
  }
}

TEST(Weyl, KernelCharacterization)
{
  const KreinField f = field_of(ModelKind::RandomHermitian, 8, 3, 2);
  std::mt19937_64 rng(6);
  for (double lambda : {-7.5, 0.123, 9.0}) {
    if (f.base().distance_to_spectrum(lambda) < 1e-3) continue;
    const Vector zeta = random_complex(3, 1, rng);
    const Vector g = gmap(f, lambda) * zeta;
    const DomainElement el{(gmap(f, lambda) - f.g_star()) * zeta, zeta};
    EXPECT_LE((represented_vector(f, el) - g).norm(), 1e-12 * g.norm());
    EXPECT_LE((adjoint_action(f, el) - lambda * g).norm(), 1e-10 * std::max(1.0, g.norm()));
  }
}

TEST(Surjectivity, Examples)
{
  const KreinField s = field_of(ModelKind::ScalarZero);
  const DomainElement zero = surjectivity_witness(s, vec({0}), vec({0}));
  EXPECT_EQ(zero.regular.norm(), 0.0);
  EXPECT_EQ(zero.charge.norm(), 0.0);
  const DomainElement el = surjectivity_witness(s, vec({2}), vec({7}));
  EXPECT_NEAR(std::abs(el.regular(0) + 2.0), 0.0, 1e-15);
  EXPECT_EQ(el.charge(0), Complex(7.0));

  const KreinField d = field_of(ModelKind::DiagPair);
  const DomainElement el2 = surjectivity_witness(d, vec({1}), vec({0}));
  EXPECT_LE((el2.regular - vec({-0.5, -0.5})).norm(), 1e-15);
}

TEST(Surjectivity, RandomTargets)
{
  const KreinField f = field_of(ModelKind::RandomHermitian, 8, 3, 9);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const Vector t1 = random_complex(3, 1, rng);
    const Vector t2 = random_complex(3, 1, rng);
    const DomainElement el = surjectivity_witness(f, t1, t2);
    EXPECT_LE((gamma1(f, el) - t1).norm(), 1e-10);
    EXPECT_EQ(gamma2(f, el), t2);
  }
}

TEST(WeylShift, Examples)
{
  const KreinField s = field_of(ModelKind::ScalarZero);
  const WeylSample base = weyl(s, 2.0 * kI);
  EXPECT_EQ(weyl_shift(base, Matrix::Zero(1, 1)).gamma, base.gamma);
  const WeylSample shifted = weyl_shift(base, Matrix::Constant(1, 1, 3.0));
  EXPECT_NEAR(std::abs(shifted.gamma(0, 0) - Complex(3.0, 0.5)), 0.0, 1e-15);
  EXPECT_EQ(shifted.z, base.z);

  const KreinField f = field_of(ModelKind::RandomHermitian, 5, 2, 1);
  std::mt19937_64 rng(3);
  const Matrix c = random_hermitian(2, rng);
  const WeylSample w = weyl(f, Complex(0.2, 0.9));
  EXPECT_LE((weyl_shift(weyl_shift(w, c), -c).gamma - w.gamma).norm(), 1e-14);
}

TEST(WeylShift, RejectsNonHermitian)
{
  const KreinField f = field_of(ModelKind::DiagPair, 0, 2);
  Matrix c = Matrix::Zero(2, 2);
  c(0, 1) = 1.0;
  try {
    weyl_shift(weyl(f, kI), c);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}
