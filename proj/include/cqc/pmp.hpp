#pragma once

// Discrete PMP shooting for the Bolza problem
//   J(u) = sum_k alpha u_k^2 dt + 1 - tr(rho_N rho_target).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cqc/adjoint.hpp"
#include "cqc/integrators.hpp"
#include "cqc/simd/kernels.hpp"

namespace cqc {

struct OcpConfig {
  double T = 3.0;
  double dt = 0.01;
  double gamma = 1.0;
  double alpha = 0.05;
  double u_max = 6.0;
  double beta = 0.5;
  int max_iters = 50;
  double dJ_tol = 1e-8;
  int grid_points = 241;
  int refine_iters = 40;
  /// Halvings of beta tried when a relaxed update would raise J. 0 accepts
  /// every update unconditionally.
  int max_backtracks = 20;

  /// Number of steps T/dt; throws ParameterError unless it is an integer.
  std::size_t steps() const;
  /// Throws ParameterError naming the first invalid field.
  void validate() const;
};

enum class StopReason { Tolerance, Stationary, NoDescent, MaxIterations, Diverged };

std::string_view stop_reason_name(StopReason r);

struct ShootResult {
  ControlSchedule u;
  std::vector<double> cost_history;  // J before the first update, then after each
  std::vector<double> relaxation;    // step actually taken by each accepted update
  Trajectory trajectory;
  CostateSeq costates;
  CostAccumulator cost;
  bool converged = false;
  StopReason reason = StopReason::MaxIterations;
  std::string detail;
};

double terminal_cost(const Herm2& rho, const Herm2& rho_target);
double total_cost(const ControlSchedule& u, const Trajectory& traj, const OcpConfig& cfg, const Herm2& rho_target);

/// <P, F(rho, u) - rho> - alpha u^2 dt with F the scheme's forward step.
double discrete_hamiltonian(const Herm2& rho, const Herm2& P, double u, Scheme scheme, const OcpConfig& cfg);

/// The same function of u in closed form (LGVI: rotation angle u dt; RK2:
/// quadratic polynomial). RKMK has no such form and yields nullopt.
std::optional<simd::TrigQuadratic> hamiltonian_profile(const Herm2& rho, const Herm2& P, Scheme scheme,
                                                       const OcpConfig& cfg);

/// Symmetric grid of cfg.grid_points values on [-u_max, u_max]; the middle
/// node is exactly 0 and u_{n-1-i} = -u_i exactly.
std::vector<double> control_grid(const OcpConfig& cfg);

/// argmax over |u| <= u_max of discrete_hamiltonian: grid scan, then
/// golden-section refinement on the bracket around the best node. Exact ties
/// go to the smaller |u|, then to the negative value.
double maximize_control(const Herm2& rho, const Herm2& P, Scheme scheme, const OcpConfig& cfg);

/// Costate handed to the pointwise maximization at step k. See shoot().
Herm2 maximization_costate(const CostateSeq& costates, std::size_t k);

/// Forward/backward sweeps with relaxed control updates
///   u_k <- (1 - b) u_k + b argmax_u H(rho_k, -P_{k+1}, u),
/// applied to all k at once. The backward sweep yields P_N = -rho_target, the
/// gradient of the terminal cost; maximizing <lambda, F> - L needs the
/// multiplier lambda = -P. b starts at cfg.beta each iteration and is halved
/// (up to cfg.max_backtracks times) while the update would increase J.
ShootResult shoot(const OcpConfig& cfg, Scheme scheme, const Herm2& rho0, const Herm2& rho_target,
                  const ControlSchedule& u0);

}  // namespace cqc
