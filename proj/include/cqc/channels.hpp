#pragma once

// Physical building blocks of the amplitude-damped, x-driven qubit:
//   H(u) = (u/2) sx,  L = sqrt(gamma) |0><1|.
// Basis ordering is (|0>, |1>) with sz|0> = +|0>, so the ground state has
// Bloch vector (0, 0, 1).

#include <array>
#include <utility>

#include "cqc/qmat.hpp"

namespace cqc {

using Vec3 = std::array<double, 3>;

/// Amplitude-damping channel of rate gamma applied for a duration tau.
struct AdChannel {
  double gamma = 0.0;
  double tau = 0.0;
  double p = 0.0;       // jump probability 1 - exp(-gamma tau)
  double keep = 1.0;    // 1 - p = exp(-gamma tau)
  double shrink = 1.0;  // sqrt(1 - p)

  /// Throws ParameterError for negative or non-finite gamma/tau.
  static AdChannel make(double gamma, double tau);

  Herm2 apply(const Herm2& rho) const;
  Herm2 dual(const Herm2& x) const;
};

/// Kraus operators (E0, E1) of the amplitude-damping channel.
std::pair<Mat2, Mat2> kraus_pair(double gamma, double tau);

Herm2 ad_apply(const Herm2& rho, double gamma, double tau);
Herm2 ad_dual_apply(const Herm2& x, double gamma, double tau);

/// U rho U^dagger. Throws ContractViolation when ||U^dagger U - I||_F > 1e-12.
Herm2 unitary_conjugate(const Mat2& u, const Herm2& rho);

/// Lindblad generator -i[H(u), rho] + L rho L^dagger - {L^dagger L, rho}/2.
Herm2 lindblad_rhs(const Herm2& rho, double u, double gamma);
/// Same generator extended linearly to arbitrary 2x2 matrices.
Mat2 lindblad_rhs(const Mat2& x, double u, double gamma);

/// Affine Bloch system r' = A r + b + u B r.
struct BlochField {
  std::array<Vec3, 3> A{};
  Vec3 b{};
  std::array<Vec3, 3> B{};

  static BlochField make(double gamma);
  Vec3 operator()(const Vec3& r, double u) const;
};

Vec3 bloch_rhs(const Vec3& r, double u, double gamma);

}  // namespace cqc
