#pragma once

// Shared test fixtures: a fixed-seed generator for random states and
// costates, plus independent oracles written with full 2x2 matrix algebra so
// they share no code path with the structured kernels under test.

#include <cmath>
#include <random>

#include "cqc/channels.hpp"
#include "cqc/qmat.hpp"

namespace cqc::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611ULL);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng()); }

/// Arbitrary Hermitian matrix with O(1) entries.
inline Herm2 random_herm() { return {normal(), normal(), cplx{normal(), normal()}}; }

/// Density operator with Bloch vector uniform in the closed unit ball.
inline Herm2 random_state() {
  Vec3 r;
  double n2 = 0.0;
  do {
    r = {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
    n2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
  } while (n2 > 1.0);
  return Herm2::from_bloch(r);
}

inline double max_abs_diff(const Herm2& a, const Herm2& b) {
  return std::max({std::abs(a.d0 - b.d0), std::abs(a.d1 - b.d1), std::abs(a.off - b.off)});
}

inline double max_abs_diff(const Mat2& a, const Mat2& b) {
  return std::max({std::abs(a.a11 - b.a11), std::abs(a.a12 - b.a12), std::abs(a.a21 - b.a21),
                   std::abs(a.a22 - b.a22)});
}

namespace oracle {

inline const cplx I{0.0, 1.0};

inline Mat2 sx() { return {0.0, 1.0, 1.0, 0.0}; }
inline Mat2 sy() { return {0.0, -I, I, 0.0}; }
inline Mat2 sz() { return {1.0, 0.0, 0.0, -1.0}; }
inline Mat2 lower(double gamma) { return {0.0, std::sqrt(gamma), 0.0, 0.0}; }  // sqrt(gamma)|0><1|

/// Kraus pair written directly from the survival probability exp(-gamma tau).
/// Forming 1 - p by subtraction would lose all digits of sqrt(1 - p) at large
/// gamma tau, so both factors are computed separately.
inline std::pair<Mat2, Mat2> kraus(double gamma, double tau) {
  const double survive = std::exp(-gamma * tau);
  const double p = -std::expm1(-gamma * tau);
  return {Mat2{1.0, 0.0, 0.0, std::sqrt(survive)}, Mat2{0.0, std::sqrt(p), 0.0, 0.0}};
}

inline Mat2 ad(const Mat2& rho, double gamma, double tau) {
  const auto [e0, e1] = kraus(gamma, tau);
  return e0 * rho * e0.adjoint() + e1 * rho * e1.adjoint();
}

inline Mat2 ad_dual(const Mat2& x, double gamma, double tau) {
  const auto [e0, e1] = kraus(gamma, tau);
  return e0.adjoint() * x * e0 + e1.adjoint() * x * e1;
}

inline Mat2 lindblad(const Mat2& rho, double u, double gamma) {
  const Mat2 h = cplx{0.5 * u} * sx();
  const Mat2 l = lower(gamma);
  const Mat2 ldl = l.adjoint() * l;
  return cplx{0.0, -1.0} * (h * rho - rho * h) + l * rho * l.adjoint() - cplx{0.5} * (ldl * rho + rho * ldl);
}

inline Mat2 heun(const Mat2& rho, double u, double dt, double gamma) {
  const Mat2 k1 = lindblad(rho, u, gamma);
  const Mat2 k2 = lindblad(rho + cplx{dt} * k1, u, gamma);
  return rho + cplx{0.5 * dt} * (k1 + k2);
}

inline Mat2 rotation(double u, double dt) {
  // exp(-i (u/2) sx dt) by its power series, summed to machine precision.
  const Mat2 gen = cplx{0.0, -0.5 * u * dt} * sx();
  Mat2 term = Mat2::identity(), sum = Mat2::identity();
  for (int n = 1; n < 60; ++n) {
    term = cplx{1.0 / n} * (term * gen);
    sum = sum + term;
  }
  return sum;
}

inline Mat2 strang(const Mat2& rho, double u, double dt, double gamma) {
  const Mat2 half = ad(rho, gamma, 0.5 * dt);
  const Mat2 r = rotation(u, dt);
  return ad(r * half * r.adjoint(), gamma, 0.5 * dt);
}

inline Vec3 bloch(const Mat2& m) {
  const Mat2 a = sx() * m, b = sy() * m, c = sz() * m;
  return {a.trace().real(), b.trace().real(), c.trace().real()};
}

/// Bloch equations typed in component form.
inline Vec3 bloch_field(const Vec3& r, double u, double gamma) {
  return {-0.5 * gamma * r[0], -0.5 * gamma * r[1] - u * r[2], -gamma * (r[2] - 1.0) + u * r[1]};
}

}  // namespace oracle

}  // namespace cqc::test
