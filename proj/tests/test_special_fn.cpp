#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "theta_idents/errors.hpp"
#include "theta_idents/special_fn.hpp"

using namespace theta_idents;

namespace {

constexpr double kPi = std::numbers::pi;

complex th(int i, complex z, const Nome& nome) { return theta(theta_index(i), ThetaArgument(z, nome)); }

double rel(complex a, complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(ThetaSeries, Theta1VanishesAtOrigin) {
  for (double m : {0.1, 0.5, 0.9}) {
    EXPECT_EQ(th(1, 0.0, EllipticContext(m).nome()), complex(0.0, 0.0));
  }
}

TEST(ThetaSeries, JacobiQuarticAtTauI) {
  const Nome nome(complex{0, 1});
  const complex t2 = th(2, 0.0, nome), t3 = th(3, 0.0, nome), t4 = th(4, 0.0, nome);
  EXPECT_LT(std::abs(std::pow(t3, 4) - std::pow(t2, 4) - std::pow(t4, 4)), 1e-12);
  EXPECT_LT(std::abs(t2 - t4), 1e-12);
}

TEST(ThetaSeries, Theta3AtHalfModulus) {
  const EllipticContext ctx(0.5);
  // sqrt(2 K(1/2) / pi) with K(1/2) = 1.8540746773013719
  EXPECT_NEAR(th(3, 0.0, ctx.nome()).real(), std::sqrt(2 * 1.8540746773013719 / kPi), 1e-10);
  EXPECT_NEAR(th(3, 0.0, ctx.nome()).real(), 1.0864348112, 1e-9);
}

TEST(ThetaSeries, RejectsLowerHalfPlane) {
  EXPECT_THROW(Nome(complex{0.3, 0.0}), DomainError);
  EXPECT_THROW(Nome(complex{0.0, -1.0}), DomainError);
}

TEST(ThetaSeries, IndexOutsideOneToFour) {
  EXPECT_THROW(theta_index(0), DomainError);
  EXPECT_THROW(theta_index(5), DomainError);
  EXPECT_EQ(to_int(theta_index(3)), 3);
}

TEST(ThetaSeries, ConvergenceErrorNearRealAxis) {
  // |q| = exp(-pi 1e-4) needs far more than 64 terms
  EXPECT_THROW(th(3, 0.1, Nome(complex{0.0, 1e-4})), ConvergenceError);
}

TEST(ThetaSeries, Periodicity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> zdist(-4, 4), mdist(0.05, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    const double z = zdist(rng);
    const Nome nome = EllipticContext(mdist(rng)).nome();
    EXPECT_LT(rel(th(3, z + kPi, nome), th(3, z, nome)), 1e-12);
    EXPECT_LT(rel(th(4, z + kPi, nome), th(4, z, nome)), 1e-12);
    EXPECT_LT(rel(th(1, z + kPi, nome), -th(1, z, nome)), 1e-12);
    EXPECT_LT(rel(th(2, z + kPi, nome), -th(2, z, nome)), 1e-12);
  }
}

TEST(ThetaSeries, ModulusFromThetaConstants) {
  for (int i = 1; i <= 9; ++i) {
    const double m = 0.1 * i;
    const Nome nome = EllipticContext(m).nome();
    const complex t2 = th(2, 0.0, nome), t3 = th(3, 0.0, nome), t4 = th(4, 0.0, nome);
    EXPECT_NEAR(std::pow(t2 / t3, 4).real(), m, 1e-12);
    EXPECT_NEAR(std::pow(t4 / t3, 4).real(), 1 - m, 1e-12);
  }
}

TEST(ThetaDerivative, EvenAndOddAtOrigin) {
  const Nome tau_i(complex{0, 1});
  EXPECT_LT(std::abs(theta_dz(ThetaIndex::Four, ThetaArgument(0.0, tau_i), 1)), 1e-15);
  const complex t1p = theta_dz(ThetaIndex::One, ThetaArgument(0.0, tau_i), 1);
  EXPECT_LT(std::abs(t1p - th(2, 0.0, tau_i) * th(3, 0.0, tau_i) * th(4, 0.0, tau_i)), 1e-10);
}

TEST(ThetaDerivative, MatchesCentralDifferences) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> zdist(-4, 4), mdist(0.05, 0.95);
  std::uniform_int_distribution<int> idist(1, 4);
  const double h = 1e-5;
  for (int trial = 0; trial < 200; ++trial) {
    const double z = zdist(rng);
    const Nome nome = EllipticContext(mdist(rng)).nome();
    const int i = idist(rng);
    const complex fd1 = (th(i, z + h, nome) - th(i, z - h, nome)) / (2 * h);
    const complex d1 = theta_dz(theta_index(i), ThetaArgument(z, nome), 1);
    EXPECT_LT(std::abs(fd1 - d1) / std::max(1.0, std::abs(d1)), 1e-7) << "i=" << i << " z=" << z;
    const complex d1p = theta_dz(theta_index(i), ThetaArgument(z + h, nome), 1);
    const complex d1m = theta_dz(theta_index(i), ThetaArgument(z - h, nome), 1);
    const complex d2 = theta_dz(theta_index(i), ThetaArgument(z, nome), 2);
    EXPECT_LT(std::abs((d1p - d1m) / (2 * h) - d2) / std::max(1.0, std::abs(d2)), 1e-7);
  }
  EXPECT_EQ(theta_derivative(ThetaIndex::Two, ThetaArgument(0.4, Nome(complex{0, 1})), 0),
            th(2, 0.4, Nome(complex{0, 1})));
}

TEST(Elliptic, CompleteIntegrals) {
  EXPECT_NEAR(elliptic_K(1e-12), kPi / 2, 1e-9);
  EXPECT_NEAR(elliptic_K(0.5), 1.8540746773, 1e-9);
  EXPECT_NEAR(elliptic_E(0.5), 1.3506438810, 1e-9);
  EXPECT_THROW(elliptic_K(0.0), DomainError);
  EXPECT_THROW(elliptic_K(1.0), DomainError);
  EXPECT_THROW(elliptic_E(-0.1), DomainError);
}

TEST(Elliptic, MonotoneAndLegendre) {
  double last_k = 0.0, last_kp = 1e300;
  for (int i = 1; i <= 9; ++i) {
    const EllipticContext ctx(0.1 * i);
    EXPECT_GT(ctx.K(), last_k);
    EXPECT_LT(ctx.Kprime(), last_kp);
    last_k = ctx.K();
    last_kp = ctx.Kprime();
    EXPECT_NEAR(ctx.E() * ctx.Kprime() + ctx.Eprime() * ctx.K() - ctx.K() * ctx.Kprime(), kPi / 2, 1e-12);
    const complex t3 = th(3, 0.0, ctx.nome());
    EXPECT_LT(std::abs(2 * ctx.K() / kPi - t3 * t3), 1e-12);
  }
}

TEST(Jacobi, PythagoreanPairs) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> udist(-5, 5), mdist(0.01, 0.99);
  for (int trial = 0; trial < 1000; ++trial) {
    const double u = udist(rng), m = mdist(rng);
    const EllipticContext ctx(m);
    const complex sn = jacobi_elliptic(JacobiKind::sn, u, ctx);
    const complex cn = jacobi_elliptic(JacobiKind::cn, u, ctx);
    const complex dn = jacobi_elliptic(JacobiKind::dn, u, ctx);
    EXPECT_LT(std::abs(sn * sn + cn * cn - 1.0), 1e-12);
    EXPECT_LT(std::abs(dn * dn + m * sn * sn - 1.0), 1e-12);
  }
}

TEST(Jacobi, Limits) {
  const EllipticContext small(1e-10);
  const EllipticContext large(1 - 1e-10);
  for (double u : {0.3, 1.0, 2.0}) {
    EXPECT_NEAR(jacobi_elliptic(JacobiKind::sn, u, small).real(), std::sin(u), 1e-5);
    EXPECT_NEAR(jacobi_elliptic(JacobiKind::sn, u, large).real(), std::tanh(u), 1e-4);
    EXPECT_NEAR(jacobi_elliptic(JacobiKind::cn, u, large).real(), 1 / std::cosh(u), 1e-4);
    EXPECT_NEAR(jacobi_elliptic(JacobiKind::dn, u, large).real(), 1 / std::cosh(u), 1e-4);
  }
}

TEST(Jacobi, DnAtQuarterPeriod) {
  const EllipticContext ctx(0.5);
  EXPECT_NEAR(jacobi_elliptic(JacobiKind::dn, ctx.K(), ctx).real(), std::sqrt(0.5), 1e-10);
  const complex sn = jacobi_elliptic(JacobiKind::sn, 0.8, ctx), cn = jacobi_elliptic(JacobiKind::cn, 0.8, ctx);
  EXPECT_LT(std::abs(sn * sn + cn * cn - 1.0), 1e-12);
}

TEST(Jacobi, PoleNearThetaFourZero) {
  const EllipticContext ctx(0.5);
  // theta_4 vanishes at z = pi tau / 2, i.e. u = i K'
  EXPECT_THROW(jacobi_elliptic(JacobiKind::sn, complex{0.0, ctx.Kprime()}, ctx), PoleError);
}

TEST(JacobiZeta, ZeroPeriodicAndMeanFree) {
  EXPECT_LT(std::abs(jacobi_zeta(0.0, EllipticContext(0.3))), 1e-15);
  const EllipticContext ctx(0.3);
  EXPECT_LT(std::abs(jacobi_zeta(0.4 + 2 * ctx.K(), ctx) - jacobi_zeta(0.4, ctx)), 1e-12);

  const EllipticContext half(0.5);
  const int n = 512;
  complex total = 0.0;
  for (int i = 0; i < n; ++i) total += jacobi_zeta(2 * half.K() * i / n, half);
  EXPECT_LT(std::abs(total * (2 * half.K() / n)), 1e-9);
}

TEST(EllipticE, ThetaFormMatchesAgm) {
  for (double m : {0.1, 0.5, 0.7}) {
    const EllipticContext ctx(m);
    EXPECT_LT(std::abs(elliptic_E_via_theta(ctx) - elliptic_E(m)) / elliptic_E(m), 1e-10);
  }
  // the pi theta_3^2 variant is twice as large
  const EllipticContext ctx(0.7);
  EXPECT_NEAR(elliptic_E_via_theta_pi_form(ctx), 2 * elliptic_E_via_theta(ctx), 1e-12);
}
