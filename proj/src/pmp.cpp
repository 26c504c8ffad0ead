#include "cqc/pmp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cqc/channels.hpp"
#include "cqc/errors.hpp"

namespace cqc {

namespace {

constexpr double kInvPhi = 0.61803398874989484820;

[[noreturn]] void reject(const std::string& field, const std::string& why) {
  throw ParameterError("ocp config: " + field + " " + why);
}

// Grid winner under the tie rule: larger value, then smaller |u|, then u < 0.
bool preferred(double u, double v, double best_u, double best_v) {
  if (v != best_v) return v > best_v;
  if (std::abs(u) != std::abs(best_u)) return std::abs(u) < std::abs(best_u);
  return u < best_u;
}

}  // namespace

std::size_t OcpConfig::steps() const {
  if (!(T >= 0.0) || !std::isfinite(T)) reject("T", "must be finite and >= 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) reject("dt", "must be finite and > 0");
  const double ratio = T / dt;
  const double n = std::round(ratio);
  if (std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio))
    reject("T/dt", "must be an integer (T=" + std::to_string(T) + ", dt=" + std::to_string(dt) + ")");
  return static_cast<std::size_t>(n);
}

void OcpConfig::validate() const {
  steps();
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) reject("gamma", "must be finite and >= 0");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) reject("alpha", "must be finite and >= 0");
  if (!(u_max > 0.0) || !std::isfinite(u_max)) reject("u_max", "must be finite and > 0");
  if (!(beta > 0.0 && beta <= 1.0)) reject("beta", "must lie in (0, 1]");
  if (max_iters < 0) reject("max_iters", "must be >= 0");
  if (!(dJ_tol >= 0.0)) reject("dJ_tol", "must be >= 0");
  if (grid_points < 3 || grid_points % 2 == 0) reject("grid_points", "must be odd and >= 3");
  if (refine_iters < 0) reject("refine_iters", "must be >= 0");
  if (max_backtracks < 0) reject("max_backtracks", "must be >= 0");
}

std::string_view stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::Tolerance: return "tolerance";
    case StopReason::Stationary: return "stationary";
    case StopReason::NoDescent: return "no_descent";
    case StopReason::MaxIterations: return "max_iterations";
    case StopReason::Diverged: return "diverged";
  }
  return "unknown";
}

double terminal_cost(const Herm2& rho, const Herm2& rho_target) { return 1.0 - hs_inner(rho, rho_target); }

double total_cost(const ControlSchedule& u, const Trajectory& traj, const OcpConfig& cfg, const Herm2& rho_target) {
  return accumulate_cost(u, cfg.alpha, cfg.dt).total() + terminal_cost(traj.rho.back(), rho_target);
}

double discrete_hamiltonian(const Herm2& rho, const Herm2& P, double u, Scheme scheme, const OcpConfig& cfg) {
  const Herm2 next = step(scheme, rho, u, cfg.dt, cfg.gamma);
  return hs_inner(P, next - rho) - cfg.alpha * u * u * cfg.dt;
}

std::optional<simd::TrigQuadratic> hamiltonian_profile(const Herm2& rho, const Herm2& P, Scheme scheme,
                                                       const OcpConfig& cfg) {
  const double dt = cfg.dt;
  simd::TrigQuadratic f;
  f.quad = -cfg.alpha * dt;
  switch (scheme) {
    case Scheme::ContactLgvi: {
      // <P, Phi U Phi(rho) U^dagger> = <Phi*(P), U Phi(rho) U^dagger>; the
      // conjugation rotates the (y, z) Pauli components by the angle u dt.
      const AdChannel half = AdChannel::make(cfg.gamma, 0.5 * dt);
      const PauliVec r = to_pauli(half.apply(rho));
      const PauliVec p = to_pauli(half.dual(P));
      f.omega = dt;
      f.base = p[0] * r[0] + p[1] * r[1] - hs_inner(P, rho);
      f.cos_c = p[2] * r[2] + p[3] * r[3];
      f.sin_c = p[3] * r[2] - p[2] * r[3];
      return f;
    }
    case Scheme::Rk2Heun: {
      // Id + dt (L0 + u L1) + dt^2/2 (L0 + u L1)^2, collected by powers of u.
      const SuperOp4 l0 = superop_of([&](const Herm2& x) { return lindblad_rhs(x, 0.0, cfg.gamma); });
      const SuperOp4 l1 = superop_of([](const Herm2& x) { return lindblad_rhs(x, 1.0, 0.0); });
      const double h2 = 0.5 * dt * dt;
      const PauliVec r = to_pauli(rho);
      const PauliVec p = to_pauli(P);
      f.base = p.dot((dt * l0 + h2 * (l0 * l0)).apply(r));
      f.lin = p.dot((dt * l1 + h2 * (l0 * l1 + l1 * l0)).apply(r));
      f.quad += p.dot((h2 * (l1 * l1)).apply(r));
      return f;
    }
    case Scheme::Rkmk2: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<double> control_grid(const OcpConfig& cfg) {
  const int half = (cfg.grid_points - 1) / 2;
  std::vector<double> grid(static_cast<std::size_t>(cfg.grid_points));
  for (int i = 0; i < cfg.grid_points; ++i)
    grid[static_cast<std::size_t>(i)] = cfg.u_max * static_cast<double>(i - half) / static_cast<double>(half);
  return grid;
}

double maximize_control(const Herm2& rho, const Herm2& P, Scheme scheme, const OcpConfig& cfg) {
  const std::vector<double> grid = control_grid(cfg);
  std::vector<double> values(grid.size());
  const auto profile = hamiltonian_profile(rho, P, scheme, cfg);
  auto objective = [&](double u) {
    return profile ? (*profile)(u) : discrete_hamiltonian(rho, P, u, scheme, cfg);
  };
  if (profile) {
    simd::eval_profile(*profile, grid, values);
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = objective(grid[i]);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (preferred(grid[i], values[i], grid[best], values[best])) best = i;

  double best_u = grid[best];
  double best_v = objective(best_u);
  if (cfg.refine_iters == 0) return best_u;

  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[best + 1 == grid.size() ? best : best + 1];
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  for (int it = 0; it < cfg.refine_iters; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = objective(d);
    }
  }
  const double cand_u = fc >= fd ? c : d;
  const double cand_v = std::max(fc, fd);
  if (cand_v > best_v) {
    best_u = cand_u;
    best_v = cand_v;
  }
  return std::clamp(best_u, -cfg.u_max, cfg.u_max);
}

Herm2 maximization_costate(const CostateSeq& costates, std::size_t k) { return -1.0 * costates.P[k + 1]; }

ShootResult shoot(const OcpConfig& cfg, Scheme scheme, const Herm2& rho0, const Herm2& rho_target,
                  const ControlSchedule& u0) {
  cfg.validate();
  const std::size_t n = cfg.steps();
  if (u0.size() != n)
    throw ParameterError("shoot: initial control has " + std::to_string(u0.size()) + " entries, expected " +
                         std::to_string(n));
  for (double v : u0.values)
    if (!(std::abs(v) <= cfg.u_max)) throw ParameterError("shoot: initial control leaves the box [-u_max, u_max]");

  ShootResult res;
  res.u = u0;
  res.trajectory = propagate(scheme, rho0, res.u, cfg.dt, cfg.gamma);
  if (res.trajectory.diverged_at) {
    res.reason = StopReason::Diverged;
    res.detail = "initial trajectory diverged at node " + std::to_string(*res.trajectory.diverged_at);
    res.costates = backward_sweep(res.trajectory, rho_target, cfg.gamma);
    res.cost = accumulate_cost(res.u, cfg.alpha, cfg.dt);
    return res;
  }
  res.cost_history.push_back(total_cost(res.u, res.trajectory, cfg, rho_target));
  res.costates = backward_sweep(res.trajectory, rho_target, cfg.gamma);

  ControlSchedule target_u = ControlSchedule::constant(n, 0.0);
  for (int it = 0; it < cfg.max_iters; ++it) {
    for (std::size_t k = 0; k < n; ++k)
      target_u[k] = maximize_control(res.trajectory.rho[k], maximization_costate(res.costates, k), scheme, cfg);
    if (target_u.values == res.u.values) {
      res.converged = true;
      res.reason = StopReason::Stationary;
      break;
    }

    const double j_prev = res.cost_history.back();
    double relax = cfg.beta;
    std::optional<Trajectory> accepted;
    ControlSchedule next = res.u;
    double j = j_prev;
    for (int attempt = 0; attempt <= cfg.max_backtracks; ++attempt, relax *= 0.5) {
      for (std::size_t k = 0; k < n; ++k) next[k] = (1.0 - relax) * res.u[k] + relax * target_u[k];
      Trajectory traj = propagate(scheme, rho0, next, cfg.dt, cfg.gamma);
      if (traj.diverged_at) {
        res.reason = StopReason::Diverged;
        res.detail = "iteration " + std::to_string(it + 1) + ": trajectory diverged at node " +
                     std::to_string(*traj.diverged_at);
        break;
      }
      j = total_cost(next, traj, cfg, rho_target);
      if (cfg.max_backtracks == 0 || j <= j_prev) {
        accepted = std::move(traj);
        break;
      }
    }
    if (res.reason == StopReason::Diverged) break;
    if (!accepted) {
      res.converged = true;
      res.reason = StopReason::NoDescent;
      res.detail = "no decrease of J after " + std::to_string(cfg.max_backtracks) + " halvings of beta";
      break;
    }

    res.u = std::move(next);
    res.trajectory = std::move(*accepted);
    res.costates = backward_sweep(res.trajectory, rho_target, cfg.gamma);
    res.cost_history.push_back(j);
    res.relaxation.push_back(relax);
    if (std::abs(j_prev - j) < cfg.dJ_tol) {
      res.converged = true;
      res.reason = StopReason::Tolerance;
      break;
    }
  }
  res.cost = accumulate_cost(res.u, cfg.alpha, cfg.dt);
  return res;
}

}  // namespace cqc
