#include <doctest.h>

#include <cmath>
#include <vector>

#include "cqc/simd/kernels.hpp"
#include "support.hpp"

using namespace cqc;
using namespace cqc::test;

namespace {

bool have_avx2() { return simd::detected_isa() == simd::Isa::Avx2; }

}  // namespace

TEST_CASE("scalar sincos agrees with libm") {
  std::vector<double> x(1000), s(1000), c(1000);
  for (double& v : x) v = uniform(-200, 200);
  simd::scalar::sincos(x, s, c);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(s[i] == std::sin(x[i]));
    CHECK(c[i] == std::cos(x[i]));
  }
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  if (!have_avx2()) {
    MESSAGE("AVX2 not available; equivalence test skipped");
    return;
  }
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 241u, 1000u}) {
    std::vector<double> x(n), s1(n), c1(n), s2(n), c2(n);
    for (double& v : x) v = uniform(-100, 100);
    simd::scalar::sincos(x, s1, c1);
    simd::avx2::sincos(x, s2, c2);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(s1[i] - s2[i]) <= 4e-16);
      CHECK(std::abs(c1[i] - c2[i]) <= 4e-16);
    }
  }
  // exact at the origin and for the grid symmetry
  std::vector<double> zero{0.0, -0.0}, s(2), c(2);
  simd::avx2::sincos(zero, s, c);
  CHECK(s[0] == 0.0);
  CHECK(c[0] == 1.0);

  for (int trial = 0; trial < 200; ++trial) {
    const simd::TrigQuadratic f{normal(), normal(), normal(), uniform(0, 0.2), normal(), normal()};
    std::vector<double> u(241), a(241), b(241);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = -6.0 + 0.05 * static_cast<double>(i);
    simd::scalar::eval_profile(f, u, a);
    simd::avx2::eval_profile(f, u, b);
    for (std::size_t i = 0; i < u.size(); ++i) {
      CHECK(std::abs(a[i] - b[i]) <= 1e-14 * (1 + std::abs(a[i])));
      CHECK(std::abs(a[i] - f(u[i])) <= 1e-14 * (1 + std::abs(a[i])));
    }
  }
}

TEST_CASE("runtime dispatch") {
  const simd::Isa before = simd::active_isa();
  CHECK(simd::select_isa(simd::Isa::Scalar) == simd::Isa::Scalar);
  CHECK(simd::active_isa() == simd::Isa::Scalar);
  const simd::Isa got = simd::select_isa(simd::Isa::Avx2);
  CHECK(got == (have_avx2() ? simd::Isa::Avx2 : simd::Isa::Scalar));
  CHECK(simd::isa_name(simd::Isa::Scalar) == "scalar");
  CHECK(simd::isa_name(simd::Isa::Avx2) == "avx2");
  simd::select_isa(before);
}
