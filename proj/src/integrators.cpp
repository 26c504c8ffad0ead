#include "cqc/integrators.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cqc/errors.hpp"

namespace cqc {

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::ContactLgvi: return "lgvi";
    case Scheme::Rk2Heun: return "rk2";
    case Scheme::Rkmk2: return "rkmk2";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "lgvi") return Scheme::ContactLgvi;
  if (name == "rk2") return Scheme::Rk2Heun;
  if (name == "rkmk2") return Scheme::Rkmk2;
  throw ParameterError("unknown scheme '" + std::string(name) + "' (expected lgvi, rk2 or rkmk2)");
}

ControlSchedule ControlSchedule::sine_pulse(std::size_t n, double dt, double amplitude) {
  ControlSchedule s;
  s.values.resize(n);
  const double horizon = static_cast<double>(n) * dt;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    s.values[k] = amplitude * std::sin(std::numbers::pi * t / horizon);
  }
  return s;
}

Herm2 lgvi_step(const AdChannel& half, const Herm2& rho, double u, double dt) {
  // Undriven, the half channels compose to the full one; apply it in one go.
  if (u == 0.0) return AdChannel::make(half.gamma, 2.0 * half.tau).apply(rho);
  const Herm2 damped = half.apply(rho);
  return half.apply(unitary_conjugate(su2_exp_x(u, dt), damped));
}

Herm2 lgvi_step(const Herm2& rho, double u, double dt, double gamma) {
  return lgvi_step(AdChannel::make(gamma, 0.5 * dt), rho, u, dt);
}

Herm2 rk2_step(const Herm2& rho, double u, double dt, double gamma) {
  const Herm2 k1 = lindblad_rhs(rho, u, gamma);
  const Herm2 k2 = lindblad_rhs(rho + dt * k1, u, gamma);
  return rho + (0.5 * dt) * (k1 + k2);
}

Mat2 rkmk2_step(const Mat2& rho, double u, double dt, double gamma) {
  const Mat2 k1 = lindblad_rhs(rho, u, gamma);
  const Mat2 g1 = expm2(cplx{0.5 * dt} * k1);
  const Mat2 g1_inv = expm2(cplx{-0.5 * dt} * k1);
  const Mat2 k2 = lindblad_rhs(g1 * rho * g1_inv, u, gamma);
  const Mat2 g2 = expm2(cplx{dt} * k2);
  const Mat2 g2_inv = expm2(cplx{-dt} * k2);
  return g2 * rho * g2_inv;
}

Herm2 rkmk2_step(const Herm2& rho, double u, double dt, double gamma) {
  return Herm2::hermitian_part(rkmk2_step(rho.full(), u, dt, gamma));
}

Herm2 step(Scheme scheme, const Herm2& rho, double u, double dt, double gamma) {
  switch (scheme) {
    case Scheme::ContactLgvi: return lgvi_step(rho, u, dt, gamma);
    case Scheme::Rk2Heun: return rk2_step(rho, u, dt, gamma);
    case Scheme::Rkmk2: return rkmk2_step(rho, u, dt, gamma);
  }
  return rho;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Trajectory start(Scheme scheme, const Herm2& rho0, const ControlSchedule& u, double dt) {
  Trajectory traj;
  traj.scheme = scheme;
  traj.dt = dt;
  traj.u = u.values;
  traj.rho.reserve(u.size() + 1);
  traj.rho.push_back(rho0);
  return traj;
}

// Marks the trajectory diverged at its last entry and pads with NaN states.
void freeze(Trajectory& traj) {
  traj.diverged_at = traj.rho.size() - 1;
  const Herm2 nan_state{kNaN, kNaN, cplx{kNaN, kNaN}};
  traj.rho.back() = nan_state;
  traj.rho.resize(traj.u.size() + 1, nan_state);
}

}  // namespace

Trajectory propagate(Scheme scheme, const Herm2& rho0, const ControlSchedule& u, double dt, double gamma) {
  if (!(dt > 0.0)) throw ParameterError("propagate: dt must be positive");
  Trajectory traj = start(scheme, rho0, u, dt);
  if (!rho0.finite()) {
    freeze(traj);
    return traj;
  }
  const AdChannel half = AdChannel::make(gamma, 0.5 * dt);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const Herm2& cur = traj.rho.back();
    switch (scheme) {
      case Scheme::ContactLgvi: traj.rho.push_back(lgvi_step(half, cur, u[k], dt)); break;
      case Scheme::Rk2Heun: traj.rho.push_back(rk2_step(cur, u[k], dt, gamma)); break;
      case Scheme::Rkmk2: traj.rho.push_back(rkmk2_step(cur, u[k], dt, gamma)); break;
    }
    if (!traj.rho.back().finite()) {
      freeze(traj);
      break;
    }
  }
  return traj;
}

Trajectory reference_trajectory(const Herm2& rho0, const ControlSchedule& u, double dt, double gamma, int refine) {
  if (refine < 1) throw ParameterError("reference_trajectory: refine must be >= 1");
  if (!(dt > 0.0)) throw ParameterError("reference_trajectory: dt must be positive");
  Trajectory traj = start(Scheme::ContactLgvi, rho0, u, dt);
  const double fine = dt / refine;
  const AdChannel half = AdChannel::make(gamma, 0.5 * fine);
  for (std::size_t k = 0; k < u.size(); ++k) {
    Herm2 rho = traj.rho.back();
    if (u[k] == 0.0) {
      // The exact flow of an undriven interval is the damping channel itself.
      rho = ad_apply(rho, gamma, dt);
    } else {
      for (int s = 0; s < refine; ++s) rho = lgvi_step(half, rho, u[k], fine);
    }
    traj.rho.push_back(rho);
  }
  return traj;
}

std::vector<Vec3> bloch_rk4(const Vec3& r0, const ControlSchedule& u, double dt, int substeps, double gamma) {
  if (substeps < 10) throw ParameterError("bloch_rk4: needs at least 10 substeps per interval");
  const BlochField field = BlochField::make(gamma);
  const double h = dt / substeps;
  auto axpy = [](const Vec3& x, double a, const Vec3& y) {
    return Vec3{x[0] + a * y[0], x[1] + a * y[1], x[2] + a * y[2]};
  };
  std::vector<Vec3> out;
  out.reserve(u.size() + 1);
  out.push_back(r0);
  Vec3 r = r0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    for (int s = 0; s < substeps; ++s) {
      const Vec3 a = field(r, u[k]);
      const Vec3 b = field(axpy(r, 0.5 * h, a), u[k]);
      const Vec3 c = field(axpy(r, 0.5 * h, b), u[k]);
      const Vec3 d = field(axpy(r, h, c), u[k]);
      for (std::size_t i = 0; i < 3; ++i) r[i] += h / 6.0 * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]);
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace cqc
