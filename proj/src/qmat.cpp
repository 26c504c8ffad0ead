#include "cqc/qmat.hpp"

#include <cmath>

namespace cqc {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kDiscClamp = 1e-14;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Half-spread of the spectrum, sqrt(tr^2 - 4 det)/2. Written as
// sqrt((d0-d1)^2 + 4|off|^2) so the radicand has no cancellation.
double half_gap(const Herm2& h) {
  const double diff = h.d0 - h.d1;
  double disc = diff * diff + 4.0 * std::norm(h.off);
  if (disc < 0.0 && disc > -kDiscClamp) disc = 0.0;
  return 0.5 * std::sqrt(disc);
}

}  // namespace

bool Mat2::finite() const {
  return cqc::finite(a11) && cqc::finite(a12) && cqc::finite(a21) && cqc::finite(a22);
}

double frobenius(const Mat2& m) {
  return std::sqrt(std::norm(m.a11) + std::norm(m.a12) + std::norm(m.a21) + std::norm(m.a22));
}

Herm2 Herm2::from_bloch(const std::array<double, 3>& r) {
  return {0.5 * (1.0 + r[2]), 0.5 * (1.0 - r[2]), cplx{0.5 * r[0], -0.5 * r[1]}};
}

Herm2 Herm2::hermitian_part(const Mat2& m) {
  return {m.a11.real(), m.a22.real(), 0.5 * (m.a12 + std::conj(m.a21))};
}

std::array<double, 3> Herm2::bloch() const {
  return {2.0 * off.real(), -2.0 * off.imag(), d0 - d1};
}

bool Herm2::finite() const { return std::isfinite(d0) && std::isfinite(d1) && cqc::finite(off); }

double frobenius(const Herm2& h) { return std::sqrt(h.d0 * h.d0 + h.d1 * h.d1 + 2.0 * std::norm(h.off)); }

PauliVec to_pauli(const Herm2& h) {
  return {{(h.d0 + h.d1) * kInvSqrt2, kSqrt2 * h.off.real(), -kSqrt2 * h.off.imag(), (h.d0 - h.d1) * kInvSqrt2}};
}

Herm2 from_pauli(const PauliVec& v) {
  return {(v[0] + v[3]) * kInvSqrt2, (v[0] - v[3]) * kInvSqrt2, cplx{v[1] * kInvSqrt2, -v[2] * kInvSqrt2}};
}

SuperOp4 SuperOp4::identity() {
  SuperOp4 s;
  for (std::size_t i = 0; i < 4; ++i) s.m[i][i] = 1.0;
  return s;
}

PauliVec SuperOp4::apply(const PauliVec& v) const {
  PauliVec out;
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] + m[i][3] * v[3];
  }
  return out;
}

SuperOp4 operator*(const SuperOp4& a, const SuperOp4& b) {
  SuperOp4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 4; ++k) acc += a.m[i][k] * b.m[k][j];
      out.m[i][j] = acc;
    }
  return out;
}

SuperOp4 operator+(const SuperOp4& a, const SuperOp4& b) {
  SuperOp4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out.m[i][j] = a.m[i][j] + b.m[i][j];
  return out;
}

SuperOp4 operator*(double s, const SuperOp4& a) {
  SuperOp4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out.m[i][j] = s * a.m[i][j];
  return out;
}

SuperOp4 superop_of(const HermMap& map) {
  SuperOp4 s;
  for (std::size_t j = 0; j < 4; ++j) {
    PauliVec e;
    e[j] = 1.0;
    const PauliVec col = to_pauli(map(from_pauli(e)));
    for (std::size_t i = 0; i < 4; ++i) s.m[i][j] = col[i];
  }
  return s;
}

SuperOp4 superop_transpose(const SuperOp4& s) {
  SuperOp4 t;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t.m[i][j] = s.m[j][i];
  return t;
}

double hs_inner(const Herm2& a, const Herm2& b) {
  return a.d0 * b.d0 + a.d1 * b.d1 + 2.0 * (a.off.real() * b.off.real() + a.off.imag() * b.off.imag());
}

double eig_min(const Herm2& h) { return 0.5 * (h.d0 + h.d1) - half_gap(h); }

double eig_max(const Herm2& h) { return 0.5 * (h.d0 + h.d1) + half_gap(h); }

Mat2 su2_exp_x(double u, double dt) {
  const double half = 0.5 * u * dt;
  const double c = std::cos(half);
  const double s = std::sin(half);
  return {c, cplx{0.0, -s}, cplx{0.0, -s}, c};
}

double unitarity_defect(const Mat2& u) { return frobenius(u.adjoint() * u - Mat2::identity()); }

Mat2 expm2(const Mat2& m) {
  // m = mu I + n with n traceless, n^2 = delta^2 I.
  const cplx mu = 0.5 * m.trace();
  const Mat2 n{m.a11 - mu, m.a12, m.a21, m.a22 - mu};
  const cplx delta2 = n.a11 * n.a11 + n.a12 * n.a21;
  const cplx delta = std::sqrt(delta2);
  cplx ch, shc;  // cosh(delta), sinh(delta)/delta
  if (std::abs(delta) < 1e-4) {
    ch = 1.0 + delta2 / 2.0 + delta2 * delta2 / 24.0;
    shc = 1.0 + delta2 / 6.0 + delta2 * delta2 / 120.0;
  } else {
    ch = std::cosh(delta);
    shc = std::sinh(delta) / delta;
  }
  const cplx scale = std::exp(mu);
  return {scale * (ch + shc * n.a11), scale * shc * n.a12, scale * shc * n.a21, scale * (ch + shc * n.a22)};
}

}  // namespace cqc
