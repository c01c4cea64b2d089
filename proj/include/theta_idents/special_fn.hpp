#pragma once

// Jacobi theta functions, complete elliptic integrals and the Jacobi elliptic
// functions built from theta ratios.
//
// Conventions: nome q = exp(i pi tau), arguments in radians,
//
//   theta_1(z) = 2 SUM_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1)z)
//   theta_2(z) = 2 SUM_{n>=0}        q^{(n+1/2)^2} cos((2n+1)z)
//   theta_3(z) = 1 + 2 SUM_{n>=1}        q^{n^2} cos(2nz)
//   theta_4(z) = 1 + 2 SUM_{n>=1} (-1)^n q^{n^2} cos(2nz)
//
// theta_1 is odd, the others even; theta_{3,4} have period pi and
// theta_{1,2} change sign under z -> z + pi.

#include <complex>

namespace theta_idents {

using complex = std::complex<double>;

enum class ThetaIndex : int { One = 1, Two = 2, Three = 3, Four = 4 };

// Throws DomainError unless 1 <= value <= 4.
ThetaIndex theta_index(int value);
constexpr int to_int(ThetaIndex index) noexcept { return static_cast<int>(index); }

// Modular parameter tau together with the derived nome and q^{1/4}.
class Nome {
 public:
  // Throws DomainError if Im(tau) <= 0.
  explicit Nome(complex tau);

  complex tau() const noexcept { return tau_; }
  complex q() const noexcept { return q_; }
  complex q_quarter() const noexcept { return q_quarter_; }

 private:
  complex tau_;
  complex q_;
  complex q_quarter_;
};

class ThetaArgument {
 public:
  ThetaArgument(complex z, complex tau) : z_(z), nome_(tau) {}
  ThetaArgument(complex z, const Nome& nome) : z_(z), nome_(nome) {}

  complex z() const noexcept { return z_; }
  complex tau() const noexcept { return nome_.tau(); }
  complex q() const noexcept { return nome_.q(); }
  const Nome& nome() const noexcept { return nome_; }

  ThetaArgument with_z(complex z) const { return ThetaArgument(z, nome_); }

 private:
  complex z_;
  Nome nome_;
};

// Maximum number of series terms summed before ConvergenceError.
inline constexpr int kMaxSeriesTerms = 64;

complex theta(ThetaIndex index, const ThetaArgument& arg);

// d^order/dz^order of theta_index, order in {1, 2}.
complex theta_dz(ThetaIndex index, const ThetaArgument& arg, int order);

// Order 0 dispatches to theta().
complex theta_derivative(ThetaIndex index, const ThetaArgument& arg, int order);

// Complete elliptic integrals by the arithmetic-geometric mean; m in (0, 1).
double elliptic_K(double m);
double elliptic_E(double m);

// Modulus m with K, K' = K(1-m), E, E' = E(1-m) and tau = i K'/K.
class EllipticContext {
 public:
  explicit EllipticContext(double m);

  double m() const noexcept { return m_; }
  double K() const noexcept { return K_; }
  double Kprime() const noexcept { return Kprime_; }
  double E() const noexcept { return E_; }
  double Eprime() const noexcept { return Eprime_; }
  complex tau() const noexcept { return {0.0, Kprime_ / K_}; }
  const Nome& nome() const noexcept { return nome_; }

  // z = u pi / (2K) for the theta-function view of argument u.
  complex to_theta_argument(complex u) const;

 private:
  double m_;
  double K_;
  double Kprime_;
  double E_;
  double Eprime_;
  Nome nome_;
};

enum class JacobiKind { sn, cn, dn };

// sn, cn, dn as theta ratios in z = u pi / 2K. Throws PoleError near zeros of theta_4.
complex jacobi_elliptic(JacobiKind kind, complex u, const EllipticContext& ctx);

// Z(u) = theta_4'(z) / (theta_3(0)^2 theta_4(z)).
complex jacobi_zeta(complex u, const EllipticContext& ctx);

// E = [1 - theta_4''(0) / (theta_3(0)^4 theta_4(0))] K with K = (pi/2) theta_3(0)^2.
double elliptic_E_via_theta(const EllipticContext& ctx);

// The same bracket multiplied by pi theta_3(0)^2 instead of K. This equals
// 2 E; kept so the misprinted variant can be checked numerically.
double elliptic_E_via_theta_pi_form(const EllipticContext& ctx);

}  // namespace theta_idents
