#include "cqc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cqc/errors.hpp"

namespace cqc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double finite_or_inf(double v) { return std::isfinite(v) ? v : kInf; }

void raise_max(double& acc, double v) {
  if (std::isfinite(v)) acc = std::max(acc, v);
}

}  // namespace

double trace_drift(const Herm2& rho) {
  if (!rho.finite()) return kInf;
  return finite_or_inf(std::abs(rho.trace() - 1.0));
}

double positivity_drift(const Herm2& rho) {
  if (!rho.finite()) return kInf;
  return finite_or_inf(-std::min(0.0, eig_min(rho)));
}

double contact_defect(const Herm2& rho_k, const Herm2& rho_next, const Herm2& p_next, double z_k, double z_next) {
  return (z_next - z_k) - hs_inner(p_next, rho_next - rho_k);
}

std::vector<double> global_error(const Trajectory& traj, const Trajectory& reference) {
  if (traj.rho.size() != reference.rho.size() || traj.dt != reference.dt)
    throw UsageError("global_error: trajectories are on different time grids");
  std::vector<double> err(traj.rho.size());
  for (std::size_t k = 0; k < err.size(); ++k) err[k] = finite_or_inf(frobenius(traj.rho[k] - reference.rho[k]));
  return err;
}

std::vector<StepMetrics> step_metrics(const Trajectory& traj, const CostateSeq& costates, const CostAccumulator& z,
                                      const Trajectory* reference) {
  const std::size_t nodes = traj.rho.size();
  if (costates.P.size() != nodes || z.z.size() != nodes)
    throw UsageError("step_metrics: trajectory, costates and cost have inconsistent lengths");
  std::vector<double> glob;
  if (reference) glob = global_error(traj, *reference);

  std::vector<StepMetrics> out(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    StepMetrics& m = out[k];
    m.k = k;
    m.trace_drift = trace_drift(traj.rho[k]);
    m.pos_drift = positivity_drift(traj.rho[k]);
    if (k + 1 < nodes)
      m.theta = finite_or_inf(contact_defect(traj.rho[k], traj.rho[k + 1], costates.P[k + 1], z.z[k], z.z[k + 1]));
    if (reference) m.glob_err = glob[k];
  }
  return out;
}

RunSummary summarize(Scheme scheme, const std::vector<StepMetrics>& steps, std::optional<std::size_t> diverged_at) {
  RunSummary s;
  s.scheme = scheme;
  s.diverged_at = diverged_at;
  for (const StepMetrics& m : steps) {
    raise_max(s.max_trace_drift, m.trace_drift);
    raise_max(s.max_pos_drift_raw, m.pos_drift);
    if (m.theta) raise_max(s.max_abs_theta, std::abs(*m.theta));
    if (m.glob_err) {
      if (!s.max_glob_err) s.max_glob_err = 0.0;
      raise_max(*s.max_glob_err, *m.glob_err);
    }
  }
  s.max_pos_drift = s.max_pos_drift_raw < kPositivityClamp ? 0.0 : s.max_pos_drift_raw;
  return s;
}

RunSummary summarize(const Trajectory& traj, const CostateSeq& costates, const CostAccumulator& z,
                     const Trajectory* reference) {
  return summarize(traj.scheme, step_metrics(traj, costates, z, reference), traj.diverged_at);
}

}  // namespace cqc
