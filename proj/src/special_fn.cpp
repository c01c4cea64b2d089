#include "theta_idents/special_fn.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "theta_idents/errors.hpp"

namespace theta_idents {
namespace {

constexpr double kRelativeStop = 1e-17;
constexpr double kAbsoluteStop = 1e-300;
constexpr double kPoleRatio = 1e-12;

constexpr complex kI{0.0, 1.0};

// Value of sin/cos (selected by `odd`) differentiated `order` times.
complex trig_derivative(bool odd, int order, complex w) {
  // d/dw cycles sin -> cos -> -sin -> -cos.
  int phase = (odd ? 0 : 1) + order;
  switch (phase % 4) {
    case 0: return std::sin(w);
    case 1: return std::cos(w);
    case 2: return -std::sin(w);
    default: return -std::cos(w);
  }
}

[[noreturn]] void throw_convergence(ThetaIndex index, int order) {
  throw ConvergenceError("theta" + std::to_string(to_int(index)) + " derivative order " +
                         std::to_string(order) + " did not converge within " +
                         std::to_string(kMaxSeriesTerms) + " terms");
}

// Half-integer characteristic series: theta_1 (odd) and theta_2 (even).
complex half_series(ThetaIndex index, const ThetaArgument& arg, int order) {
  const bool odd = index == ThetaIndex::One;
  const complex z = arg.z();
  const complex q = arg.q();
  const complex q2 = q * q;
  const double y = std::abs(z.imag());

  complex qpow{1.0, 0.0};  // q^{n(n+1)}
  complex step = q2;        // q^{2(n+1)}
  complex sum{0.0, 0.0};
  double first_envelope = 0.0;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    const double a = 2.0 * n + 1.0;
    const double sign = (odd && (n % 2 == 1)) ? -1.0 : 1.0;
    const double weight = std::pow(a, order);
    sum += sign * qpow * weight * trig_derivative(odd, order, a * z);
    const double envelope = std::abs(qpow) * weight * std::cosh(a * y);
    if (n == 0) first_envelope = envelope;
    if (envelope < kAbsoluteStop ||
        envelope <= kRelativeStop * std::max(std::abs(sum), first_envelope)) {
      return 2.0 * arg.nome().q_quarter() * sum;
    }
    qpow *= step;
    step *= q2;
  }
  throw_convergence(index, order);
}

// Integer characteristic series: theta_3 and theta_4.
complex integer_series(ThetaIndex index, const ThetaArgument& arg, int order) {
  const bool alternating = index == ThetaIndex::Four;
  const complex z = arg.z();
  const complex q = arg.q();
  const complex q2 = q * q;
  const double y = std::abs(z.imag());

  complex qpow = q;  // q^{n^2}
  complex step = q * q2;  // q^{2n+1}
  complex sum{0.0, 0.0};
  double first_envelope = 0.0;
  for (int n = 1; n <= kMaxSeriesTerms; ++n) {
    const double a = 2.0 * n;
    const double sign = (alternating && (n % 2 == 1)) ? -1.0 : 1.0;
    const double weight = std::pow(a, order);
    sum += sign * qpow * weight * trig_derivative(false, order, a * z);
    const double envelope = std::abs(qpow) * weight * std::cosh(a * y);
    if (n == 1) first_envelope = envelope;
    const double scale = std::max(std::abs(order == 0 ? 0.5 + sum : sum), first_envelope);
    if (envelope < kAbsoluteStop || envelope <= kRelativeStop * scale) {
      return (order == 0 ? complex{1.0, 0.0} : complex{0.0, 0.0}) + 2.0 * sum;
    }
    qpow *= step;
    step *= q2;
  }
  throw_convergence(index, order);
}

}  // namespace

ThetaIndex theta_index(int value) {
  if (value < 1 || value > 4) {
    throw DomainError("theta index must be 1..4, got " + std::to_string(value));
  }
  return static_cast<ThetaIndex>(value);
}

Nome::Nome(complex tau) : tau_(tau) {
  if (!(tau.imag() > 0.0)) {
    throw DomainError("modular parameter must have Im(tau) > 0");
  }
  q_ = std::exp(kI * std::numbers::pi * tau);
  q_quarter_ = std::exp(kI * std::numbers::pi * tau / 4.0);
}

complex theta_derivative(ThetaIndex index, const ThetaArgument& arg, int order) {
  if (order < 0 || order > 2) {
    throw DomainError("derivative order must be 0, 1 or 2");
  }
  switch (index) {
    case ThetaIndex::One:
    case ThetaIndex::Two: return half_series(index, arg, order);
    case ThetaIndex::Three:
    case ThetaIndex::Four: return integer_series(index, arg, order);
  }
  throw DomainError("invalid theta index");
}

// Arguments far from the real axis are first moved into the strip
// |Im z| <= pi Im(tau) / 2 by z = z' + k pi tau, using
// theta(z' + k pi tau) = (+-1)^k q^{-k^2} e^{-2ikz'} theta(z'),
// with the minus sign for theta_1 and theta_4.
complex theta(ThetaIndex index, const ThetaArgument& arg) {
  const double strip = std::numbers::pi * arg.tau().imag();
  const double k = std::round(arg.z().imag() / strip);
  if (k == 0.0) return theta_derivative(index, arg, 0);
  const complex reduced = arg.z() - k * std::numbers::pi * arg.tau();
  const complex value = theta_derivative(index, arg.with_z(reduced), 0);
  const complex factor = std::exp(-kI * std::numbers::pi * arg.tau() * (k * k) - 2.0 * kI * k * reduced);
  const bool flips = (index == ThetaIndex::One || index == ThetaIndex::Four) && std::fmod(std::abs(k), 2.0) == 1.0;
  return (flips ? -1.0 : 1.0) * factor * value;
}

complex theta_dz(ThetaIndex index, const ThetaArgument& arg, int order) {
  if (order != 1 && order != 2) {
    throw DomainError("theta_dz order must be 1 or 2");
  }
  return theta_derivative(index, arg, order);
}

namespace {

struct AgmResult {
  double K;
  double E;
};

AgmResult agm(double m) {
  if (!(m > 0.0 && m < 1.0)) {
    throw DomainError("elliptic modulus must lie in (0, 1)");
  }
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  double power = 0.5;
  double sum = 0.5 * m;  // 2^{-1} c_0^2 with c_0^2 = m
  for (int i = 0; i < 64; ++i) {
    const double c = 0.5 * (a - b);
    const double next_a = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next_a;
    power *= 2.0;
    sum += power * c * c;
    if (std::abs(c) <= 1e-17 * a) break;
  }
  const double K = std::numbers::pi / (2.0 * a);
  return {K, K * (1.0 - sum)};
}

}  // namespace

double elliptic_K(double m) { return agm(m).K; }
double elliptic_E(double m) { return agm(m).E; }

namespace {
Nome nome_for(double m) {
  const AgmResult direct = agm(m);
  const AgmResult complementary = agm(1.0 - m);
  return Nome(complex{0.0, complementary.K / direct.K});
}
}  // namespace

EllipticContext::EllipticContext(double m) : m_(m), nome_(nome_for(m)) {
  const AgmResult direct = agm(m);
  const AgmResult complementary = agm(1.0 - m);
  K_ = direct.K;
  E_ = direct.E;
  Kprime_ = complementary.K;
  Eprime_ = complementary.E;
}

complex EllipticContext::to_theta_argument(complex u) const { return u * std::numbers::pi / (2.0 * K_); }

namespace {

void check_pole(complex denominator, complex numerator) {
  if (std::abs(denominator) < kPoleRatio * std::max(1.0, std::abs(numerator))) {
    throw PoleError("theta_4 vanishes near the requested argument");
  }
}

}  // namespace

complex jacobi_elliptic(JacobiKind kind, complex u, const EllipticContext& ctx) {
  const ThetaArgument arg(ctx.to_theta_argument(u), ctx.nome());
  const complex t4 = theta(ThetaIndex::Four, arg);
  const complex t1 = theta(ThetaIndex::One, arg);
  check_pole(t4, t1);
  const double m_quarter = std::pow(ctx.m(), 0.25);
  const double mc_quarter = std::pow(1.0 - ctx.m(), 0.25);
  switch (kind) {
    case JacobiKind::sn: return t1 / (m_quarter * t4);
    case JacobiKind::cn: return mc_quarter / m_quarter * theta(ThetaIndex::Two, arg) / t4;
    case JacobiKind::dn: return mc_quarter * theta(ThetaIndex::Three, arg) / t4;
  }
  throw DomainError("invalid Jacobi elliptic kind");
}

complex jacobi_zeta(complex u, const EllipticContext& ctx) {
  const ThetaArgument arg(ctx.to_theta_argument(u), ctx.nome());
  const complex t4 = theta(ThetaIndex::Four, arg);
  check_pole(t4, theta(ThetaIndex::One, arg));
  const complex t3 = theta(ThetaIndex::Three, arg.with_z(0.0));
  return theta_dz(ThetaIndex::Four, arg, 1) / (t3 * t3 * t4);
}

namespace {
double e_bracket(const EllipticContext& ctx, double& theta3_squared) {
  const ThetaArgument origin(0.0, ctx.nome());
  const double t3 = theta(ThetaIndex::Three, origin).real();
  const double t4 = theta(ThetaIndex::Four, origin).real();
  const double t4pp = theta_dz(ThetaIndex::Four, origin, 2).real();
  theta3_squared = t3 * t3;
  return 1.0 - t4pp / (theta3_squared * theta3_squared * t4);
}
}  // namespace

double elliptic_E_via_theta(const EllipticContext& ctx) {
  double t3sq = 0.0;
  const double bracket = e_bracket(ctx, t3sq);
  return bracket * 0.5 * std::numbers::pi * t3sq;
}

double elliptic_E_via_theta_pi_form(const EllipticContext& ctx) {
  double t3sq = 0.0;
  const double bracket = e_bracket(ctx, t3sq);
  return bracket * std::numbers::pi * t3sq;
}

}  // namespace theta_idents
