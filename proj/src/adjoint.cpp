#include "cqc/adjoint.hpp"

#include <limits>

#include "cqc/channels.hpp"
#include "cqc/errors.hpp"

namespace cqc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kRkmkFdStep = 1e-6;

Herm2 lgvi_adjoint_step(const AdChannel& half, const Herm2& p_next, double u, double dt) {
  const Herm2 inner = half.dual(p_next);
  return half.dual(unitary_conjugate(su2_exp_x(u, dt).adjoint(), inner));
}

}  // namespace

Herm2 lgvi_adjoint_step(const Herm2& p_next, double u, double dt, double gamma) {
  return lgvi_adjoint_step(AdChannel::make(gamma, 0.5 * dt), p_next, u, dt);
}

SuperOp4 rk2_step_superop(double u, double dt, double gamma) {
  const SuperOp4 gen = superop_of([=](const Herm2& x) { return lindblad_rhs(x, u, gamma); });
  return SuperOp4::identity() + dt * gen + (0.5 * dt * dt) * (gen * gen);
}

Herm2 rk2_adjoint_step(const Herm2& p_next, double u, double dt, double gamma) {
  return superop_transpose(rk2_step_superop(u, dt, gamma)).apply(p_next);
}

Herm2 rkmk2_adjoint_step(const Herm2& p_next, const Herm2& rho, double u, double dt, double gamma) {
  const SuperOp4 jac = superop_of([&](const Herm2& dir) {
    const Herm2 fwd = rkmk2_step(rho + kRkmkFdStep * dir, u, dt, gamma);
    const Herm2 bwd = rkmk2_step(rho - kRkmkFdStep * dir, u, dt, gamma);
    return (0.5 / kRkmkFdStep) * (fwd - bwd);
  });
  return superop_transpose(jac).apply(p_next);
}

CostateSeq backward_sweep(const Trajectory& traj, const Herm2& rho_target, double gamma) {
  return backward_sweep_from(traj, -1.0 * rho_target, gamma);
}

CostateSeq backward_sweep_from(const Trajectory& traj, const Herm2& terminal, double gamma) {
  const std::size_t n = traj.steps();
  if (traj.rho.size() != n + 1) throw UsageError("backward_sweep: trajectory has inconsistent lengths");
  CostateSeq seq;
  seq.P.assign(n + 1, Herm2{kNaN, kNaN, cplx{kNaN, kNaN}});
  std::size_t last = n;
  if (traj.diverged_at) {
    // The first finite node before the divergence plays the terminal role.
    last = *traj.diverged_at == 0 ? 0 : *traj.diverged_at - 1;
    seq.truncated_at = last;
  }
  seq.P[last] = terminal;
  if (traj.diverged_at && *traj.diverged_at == 0) return seq;

  const AdChannel half = AdChannel::make(gamma, 0.5 * traj.dt);
  for (std::size_t k = last; k-- > 0;) {
    const double u = traj.u[k];
    switch (traj.scheme) {
      case Scheme::ContactLgvi: seq.P[k] = lgvi_adjoint_step(half, seq.P[k + 1], u, traj.dt); break;
      case Scheme::Rk2Heun: seq.P[k] = rk2_adjoint_step(seq.P[k + 1], u, traj.dt, gamma); break;
      case Scheme::Rkmk2: seq.P[k] = rkmk2_adjoint_step(seq.P[k + 1], traj.rho[k], u, traj.dt, gamma); break;
    }
  }
  return seq;
}

CostAccumulator accumulate_cost(const ControlSchedule& u, double alpha, double dt) {
  if (!(alpha >= 0.0)) throw ParameterError("accumulate_cost: alpha must be >= 0");
  CostAccumulator acc;
  acc.z.resize(u.size() + 1);
  acc.z[0] = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) acc.z[k + 1] = acc.z[k] + alpha * u[k] * u[k] * dt;
  return acc;
}

}  // namespace cqc
