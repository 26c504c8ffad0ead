#pragma once

// Backward costate transport (Hilbert-Schmidt adjoints of the forward step
// maps) and running-cost accumulation.

#include <cstddef>
#include <optional>
#include <vector>

#include "cqc/integrators.hpp"
#include "cqc/qmat.hpp"

namespace cqc {

struct CostateSeq {
  /// P[k] for k = 0..N; P[N] is the terminal value. Entries past a
  /// truncation index are NaN.
  std::vector<Herm2> P;
  /// Set when the trajectory diverged: the sweep started from this node.
  std::optional<std::size_t> truncated_at;

  const Herm2& terminal() const { return P.back(); }
};

struct CostAccumulator {
  std::vector<double> z;  // z[0] = 0, z[k+1] = z[k] + alpha u_k^2 dt
  double total() const { return z.back(); }
};

/// Dual of the Strang step: Phi*_{dt/2}(U^dagger Phi*_{dt/2}(P) U).
Herm2 lgvi_adjoint_step(const Herm2& p_next, double u, double dt, double gamma);

/// Linearization of the Heun step as a Pauli-basis superoperator,
/// Id + dt L + dt^2/2 L^2 with L the Lindblad generator at control u.
SuperOp4 rk2_step_superop(double u, double dt, double gamma);
/// Transpose of rk2_step_superop applied to p_next.
Herm2 rk2_adjoint_step(const Herm2& p_next, double u, double dt, double gamma);

/// Adjoint of the (nonlinear) RKMK map linearized at rho, by central
/// differences along the four Pauli directions.
Herm2 rkmk2_adjoint_step(const Herm2& p_next, const Herm2& rho, double u, double dt, double gamma);

/// Costates along traj with P[N] = -rho_target, using the adjoint that
/// matches traj.scheme. No states are re-propagated.
CostateSeq backward_sweep(const Trajectory& traj, const Herm2& rho_target, double gamma);
/// Same recursion from an arbitrary terminal costate.
CostateSeq backward_sweep_from(const Trajectory& traj, const Herm2& terminal, double gamma);

CostAccumulator accumulate_cost(const ControlSchedule& u, double alpha, double dt);

}  // namespace cqc
