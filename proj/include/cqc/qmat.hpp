#pragma once

// Exact 2x2 complex/Hermitian algebra for a single qubit.
//
// Everything here is closed form: eigenvalues come from the quadratic formula,
// the SU(2) exponential from the half-angle identity. No iterative solvers.

#include <array>
#include <complex>
#include <functional>

namespace cqc {

using cplx = std::complex<double>;

/// General 2x2 complex matrix, row-major entries a11 a12 a21 a22.
struct Mat2 {
  cplx a11{}, a12{}, a21{}, a22{};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 zero() { return {}; }

  cplx trace() const { return a11 + a22; }
  cplx det() const { return a11 * a22 - a12 * a21; }
  Mat2 adjoint() const { return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)}; }
  bool finite() const;

  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
  }
  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
  }
  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
  }
  friend Mat2 operator*(cplx s, const Mat2& a) { return {s * a.a11, s * a.a12, s * a.a21, s * a.a22}; }
};

/// Frobenius norm of a general matrix.
double frobenius(const Mat2& m);

/// Hermitian 2x2 matrix stored as two real diagonal entries and the upper
/// off-diagonal entry; the lower one is its conjugate by construction.
struct Herm2 {
  double d0 = 0.0;  // <0|H|0>
  double d1 = 0.0;  // <1|H|1>
  cplx off{};       // <0|H|1>

  static Herm2 identity() { return {1.0, 1.0, 0.0}; }
  static Herm2 zero() { return {}; }
  static Herm2 ground() { return {1.0, 0.0, 0.0}; }   // |0><0|
  static Herm2 excited() { return {0.0, 1.0, 0.0}; }  // |1><1|
  static Herm2 pauli_x() { return {0.0, 0.0, 1.0}; }
  static Herm2 pauli_y() { return {0.0, 0.0, cplx{0.0, -1.0}}; }
  static Herm2 pauli_z() { return {1.0, -1.0, 0.0}; }
  /// rho = (I + r.sigma)/2
  static Herm2 from_bloch(const std::array<double, 3>& r);
  /// Hermitian part (M + M^dagger)/2 of a general matrix.
  static Herm2 hermitian_part(const Mat2& m);

  double trace() const { return d0 + d1; }
  double det() const { return d0 * d1 - std::norm(off); }
  Mat2 full() const { return {d0, off, std::conj(off), d1}; }
  /// Bloch vector (tr(rho sigma_x), tr(rho sigma_y), tr(rho sigma_z)).
  std::array<double, 3> bloch() const;
  bool finite() const;

  friend Herm2 operator+(const Herm2& a, const Herm2& b) { return {a.d0 + b.d0, a.d1 + b.d1, a.off + b.off}; }
  friend Herm2 operator-(const Herm2& a, const Herm2& b) { return {a.d0 - b.d0, a.d1 - b.d1, a.off - b.off}; }
  friend Herm2 operator*(double s, const Herm2& a) { return {s * a.d0, s * a.d1, s * a.off}; }
  friend bool operator==(const Herm2&, const Herm2&) = default;
};

double frobenius(const Herm2& h);

/// Coefficients in the orthonormal basis {I, sx, sy, sz}/sqrt(2).
struct PauliVec {
  std::array<double, 4> c{};  // c0, cx, cy, cz

  double& operator[](std::size_t i) { return c[i]; }
  double operator[](std::size_t i) const { return c[i]; }
  double dot(const PauliVec& o) const { return c[0] * o.c[0] + c[1] * o.c[1] + c[2] * o.c[2] + c[3] * o.c[3]; }
};

PauliVec to_pauli(const Herm2& h);
Herm2 from_pauli(const PauliVec& v);

/// Real 4x4 matrix acting on PauliVec coordinates. Because the Pauli basis is
/// orthonormal for the Hilbert-Schmidt pairing, the transpose is the adjoint.
struct SuperOp4 {
  std::array<std::array<double, 4>, 4> m{};  // m[row][col]

  static SuperOp4 identity();
  PauliVec apply(const PauliVec& v) const;
  Herm2 apply(const Herm2& h) const { return from_pauli(apply(to_pauli(h))); }

  friend SuperOp4 operator*(const SuperOp4& a, const SuperOp4& b);
  friend SuperOp4 operator+(const SuperOp4& a, const SuperOp4& b);
  friend SuperOp4 operator*(double s, const SuperOp4& a);
};

using HermMap = std::function<Herm2(const Herm2&)>;

/// Matrix of a linear map on Hermitian matrices, column j = image of basis j.
SuperOp4 superop_of(const HermMap& map);
SuperOp4 superop_transpose(const SuperOp4& s);

/// Re tr(A^dagger B).
double hs_inner(const Herm2& a, const Herm2& b);

double eig_min(const Herm2& h);
double eig_max(const Herm2& h);

/// exp(-i (u/2) sx dt) = cos(u dt/2) I - i sin(u dt/2) sx.
Mat2 su2_exp_x(double u, double dt);

/// ||U^dagger U - I||_F
double unitarity_defect(const Mat2& u);

/// Closed-form exponential of an arbitrary 2x2 matrix via Cayley-Hamilton.
Mat2 expm2(const Mat2& m);

}  // namespace cqc
