#pragma once

// Geometric diagnostics of a discrete trajectory: trace drift, positivity
// drift, contact-form defect and global error against a reference.

#include <cstddef>
#include <optional>
#include <vector>

#include "cqc/adjoint.hpp"
#include "cqc/integrators.hpp"

namespace cqc {

/// Positivity drifts below this are reported as 0 in summaries.
inline constexpr double kPositivityClamp = 1e-14;

/// |tr(rho) - 1|, +inf for non-finite states.
double trace_drift(const Herm2& rho);
/// -min(0, lambda_min(rho)), +inf for non-finite states. Not clamped.
double positivity_drift(const Herm2& rho);
/// (z_next - z_k) - <P_next, rho_next - rho_k>.
double contact_defect(const Herm2& rho_k, const Herm2& rho_next, const Herm2& p_next, double z_k, double z_next);
/// Frobenius distance per node; throws UsageError unless both share the grid.
std::vector<double> global_error(const Trajectory& traj, const Trajectory& reference);

struct StepMetrics {
  std::size_t k = 0;
  double trace_drift = 0.0;
  double pos_drift = 0.0;        // raw
  std::optional<double> theta;   // signed; absent at the final node
  std::optional<double> glob_err;
};

struct RunSummary {
  Scheme scheme = Scheme::ContactLgvi;
  double max_trace_drift = 0.0;
  double max_pos_drift = 0.0;      // after the clamp
  double max_pos_drift_raw = 0.0;
  double max_abs_theta = 0.0;
  std::optional<double> max_glob_err;
  std::optional<std::size_t> diverged_at;
};

std::vector<StepMetrics> step_metrics(const Trajectory& traj, const CostateSeq& costates, const CostAccumulator& z,
                                      const Trajectory* reference = nullptr);

/// Maxima over the finite entries of step_metrics; the divergence index is
/// carried separately.
RunSummary summarize(const Trajectory& traj, const CostateSeq& costates, const CostAccumulator& z,
                     const Trajectory* reference = nullptr);
RunSummary summarize(Scheme scheme, const std::vector<StepMetrics>& steps, std::optional<std::size_t> diverged_at);

}  // namespace cqc
