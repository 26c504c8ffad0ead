#include "cqc/channels.hpp"

#include <cmath>
#include <string>

#include "cqc/errors.hpp"

namespace cqc {

namespace {

constexpr double kUnitarityTol = 1e-12;

void check_rate_and_duration(double gamma, double tau) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw ParameterError("amplitude damping: gamma must be finite and >= 0, got " + std::to_string(gamma));
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw ParameterError("amplitude damping: tau must be finite and >= 0, got " + std::to_string(tau));
}

}  // namespace

AdChannel AdChannel::make(double gamma, double tau) {
  check_rate_and_duration(gamma, tau);
  AdChannel ch;
  ch.gamma = gamma;
  ch.tau = tau;
  ch.p = -std::expm1(-gamma * tau);
  ch.keep = std::exp(-gamma * tau);
  ch.shrink = std::exp(-0.5 * gamma * tau);
  return ch;
}

// E0 rho E0^dagger + E1 rho E1^dagger written out entrywise; the population
// moved to |0> is taken as d1 - keep*d1 so the trace is conserved to rounding.
Herm2 AdChannel::apply(const Herm2& rho) const {
  const double excited = keep * rho.d1;
  return {rho.d0 + (rho.d1 - excited), excited, shrink * rho.off};
}

// E0^dagger X E0 + E1^dagger X E1; d1 is written as X11 + p (X00 - X11) so
// the identity is mapped to the identity exactly.
Herm2 AdChannel::dual(const Herm2& x) const {
  return {x.d0, x.d1 + p * (x.d0 - x.d1), shrink * x.off};
}

std::pair<Mat2, Mat2> kraus_pair(double gamma, double tau) {
  const AdChannel ch = AdChannel::make(gamma, tau);
  const Mat2 e0{1.0, 0.0, 0.0, ch.shrink};
  const Mat2 e1{0.0, std::sqrt(ch.p), 0.0, 0.0};
  return {e0, e1};
}

Herm2 ad_apply(const Herm2& rho, double gamma, double tau) { return AdChannel::make(gamma, tau).apply(rho); }

Herm2 ad_dual_apply(const Herm2& x, double gamma, double tau) { return AdChannel::make(gamma, tau).dual(x); }

Herm2 unitary_conjugate(const Mat2& u, const Herm2& rho) {
  const double defect = unitarity_defect(u);
  if (!(defect <= kUnitarityTol))
    throw ContractViolation("unitary_conjugate: propagator is not unitary (defect " + std::to_string(defect) + ")");
  return Herm2::hermitian_part(u * rho.full() * u.adjoint());
}

Herm2 lindblad_rhs(const Herm2& rho, double u, double gamma) {
  const double im = rho.off.imag();
  return {-u * im + gamma * rho.d1, u * im - gamma * rho.d1,
          cplx{0.0, -0.5 * u * (rho.d1 - rho.d0)} - 0.5 * gamma * rho.off};
}

Mat2 lindblad_rhs(const Mat2& x, double u, double gamma) {
  const cplx mi_half_u{0.0, -0.5 * u};
  return {mi_half_u * (x.a21 - x.a12) + gamma * x.a22, mi_half_u * (x.a22 - x.a11) - 0.5 * gamma * x.a12,
          mi_half_u * (x.a11 - x.a22) - 0.5 * gamma * x.a21, mi_half_u * (x.a12 - x.a21) - gamma * x.a22};
}

BlochField BlochField::make(double gamma) {
  BlochField f;
  f.A[0][0] = -0.5 * gamma;
  f.A[1][1] = -0.5 * gamma;
  f.A[2][2] = -gamma;
  f.b = {0.0, 0.0, gamma};
  f.B[1][2] = -1.0;
  f.B[2][1] = 1.0;
  return f;
}

Vec3 BlochField::operator()(const Vec3& r, double u) const {
  Vec3 out{};
  for (std::size_t i = 0; i < 3; ++i) {
    double acc = b[i];
    for (std::size_t j = 0; j < 3; ++j) acc += (A[i][j] + u * B[i][j]) * r[j];
    out[i] = acc;
  }
  return out;
}

Vec3 bloch_rhs(const Vec3& r, double u, double gamma) {
  return {-0.5 * gamma * r[0], -0.5 * gamma * r[1] - u * r[2], -gamma * (r[2] - 1.0) + u * r[1]};
}

}  // namespace cqc
