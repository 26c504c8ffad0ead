#pragma once

// Forward time-steppers for the controlled amplitude-damping qubit.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "cqc/channels.hpp"
#include "cqc/qmat.hpp"

namespace cqc {

enum class Scheme { ContactLgvi, Rk2Heun, Rkmk2 };

std::string_view scheme_name(Scheme s);
/// Accepts "lgvi", "rk2", "rkmk2"; throws ParameterError otherwise.
Scheme parse_scheme(std::string_view name);

/// Piecewise-constant controls u_k held over [k dt, (k+1) dt).
struct ControlSchedule {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t k) const { return values[k]; }
  double& operator[](std::size_t k) { return values[k]; }

  static ControlSchedule constant(std::size_t n, double u) { return {std::vector<double>(n, u)}; }
  /// u_k = amplitude * sin(pi k dt / T), k = 0..n-1 with T = n dt.
  static ControlSchedule sine_pulse(std::size_t n, double dt, double amplitude);
};

struct Trajectory {
  Scheme scheme = Scheme::ContactLgvi;
  double dt = 0.0;
  std::vector<Herm2> rho;  // N + 1 states
  std::vector<double> u;   // N controls
  /// First node whose state is non-finite; states from there on are NaN.
  std::optional<std::size_t> diverged_at;

  std::size_t steps() const { return u.size(); }
  double time(std::size_t k) const { return static_cast<double>(k) * dt; }
};

/// Strang step: half damping, exact x-rotation, half damping.
Herm2 lgvi_step(const Herm2& rho, double u, double dt, double gamma);
Herm2 lgvi_step(const AdChannel& half, const Herm2& rho, double u, double dt);

/// Heun step on the Lindblad generator with the control frozen over the step.
Herm2 rk2_step(const Herm2& rho, double u, double dt, double gamma);

/// Two-stage RKMK update evaluated literally: K1 = L(rho),
/// K2 = L(exp(dt K1/2) rho exp(-dt K1/2)), rho' = exp(dt K2) rho exp(-dt K2).
/// The similarity transforms leave the Hermitian subspace, so this works on
/// general matrices.
Mat2 rkmk2_step(const Mat2& rho, double u, double dt, double gamma);
/// Hermitian part of the general-matrix update.
Herm2 rkmk2_step(const Herm2& rho, double u, double dt, double gamma);

Herm2 step(Scheme scheme, const Herm2& rho, double u, double dt, double gamma);

Trajectory propagate(Scheme scheme, const Herm2& rho0, const ControlSchedule& u, double dt, double gamma);

/// LGVI with step dt/refine, each u_k held over its whole coarse interval,
/// sampled at the coarse nodes.
Trajectory reference_trajectory(const Herm2& rho0, const ControlSchedule& u, double dt, double gamma, int refine);

/// Classical RK4 on the Bloch ODE with `substeps` fine steps per coarse
/// interval (substeps >= 10); returns the Bloch vector at each coarse node.
std::vector<Vec3> bloch_rk4(const Vec3& r0, const ControlSchedule& u, double dt, int substeps, double gamma);

}  // namespace cqc
