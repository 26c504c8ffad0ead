#include <atomic>

#include "cqc/simd/kernels.hpp"

namespace cqc::simd {

bool avx2_compiled();  // kernels_avx2.cpp

namespace {

Isa probe() {
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_compiled() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

Isa select_isa(Isa isa) {
  const Isa chosen = (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) ? Isa::Scalar : isa;
  active().store(chosen, std::memory_order_relaxed);
  return chosen;
}

void sincos(std::span<const double> x, std::span<double> s, std::span<double> c) {
  if (active_isa() == Isa::Avx2)
    avx2::sincos(x, s, c);
  else
    scalar::sincos(x, s, c);
}

void eval_profile(const TrigQuadratic& f, std::span<const double> u, std::span<double> out) {
  if (active_isa() == Isa::Avx2)
    avx2::eval_profile(f, u, out);
  else
    scalar::eval_profile(f, u, out);
}

}  // namespace cqc::simd
