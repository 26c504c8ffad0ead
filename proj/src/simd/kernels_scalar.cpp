#include <cmath>

#include "cqc/simd/kernels.hpp"

namespace cqc::simd {

double TrigQuadratic::operator()(double u) const {
  const double arg = omega * u;
  return base + cos_c * std::cos(arg) + sin_c * std::sin(arg) + u * (lin + quad * u);
}

namespace scalar {

void sincos(std::span<const double> x, std::span<double> s, std::span<double> c) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

void eval_profile(const TrigQuadratic& f, std::span<const double> u, std::span<double> out) {
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = f(u[i]);
}

}  // namespace scalar
}  // namespace cqc::simd
