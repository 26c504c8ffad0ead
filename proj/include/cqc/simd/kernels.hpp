#pragma once

// Data-parallel kernels with a scalar reference and an AVX2/FMA variant chosen
// at runtime. Both variants are compiled into every build; the AVX2 bodies use
// function-level target attributes so no global -mavx2 is needed.

#include <cstddef>
#include <span>
#include <string_view>

namespace cqc::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// Best instruction set supported by this CPU (and compiled in).
Isa detected_isa();
/// Instruction set currently used by the dispatching entry points.
Isa active_isa();
/// Overrides dispatch; requesting an unsupported ISA falls back to Scalar.
/// Returns the ISA actually selected.
Isa select_isa(Isa isa);

/// Scalar function of a control value u of the form
///   base + cos_c cos(omega u) + sin_c sin(omega u) + lin u + quad u^2.
/// Every per-step discrete Hamiltonian of the qubit schemes with closed-form
/// u-dependence has this shape.
struct TrigQuadratic {
  double base = 0.0;
  double cos_c = 0.0;
  double sin_c = 0.0;
  double omega = 0.0;
  double lin = 0.0;
  double quad = 0.0;

  double operator()(double u) const;
};

namespace scalar {
void sincos(std::span<const double> x, std::span<double> s, std::span<double> c);
void eval_profile(const TrigQuadratic& f, std::span<const double> u, std::span<double> out);
}  // namespace scalar

namespace avx2 {
/// Callers must check detected_isa() == Isa::Avx2 first.
void sincos(std::span<const double> x, std::span<double> s, std::span<double> c);
void eval_profile(const TrigQuadratic& f, std::span<const double> u, std::span<double> out);
}  // namespace avx2

/// Dispatching entry points. Output spans must be at least as long as inputs.
void sincos(std::span<const double> x, std::span<double> s, std::span<double> c);
void eval_profile(const TrigQuadratic& f, std::span<const double> u, std::span<double> out);

}  // namespace cqc::simd
