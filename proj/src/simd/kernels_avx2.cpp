// AVX2/FMA kernels. Only this translation unit touches intrinsics; every
// function that does carries a target attribute instead of relying on global
// compile flags, so the rest of the library stays baseline x86-64.

#include <array>

#include "cqc/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define CQC_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#define CQC_TARGET_AVX2 __attribute__((target("avx2,fma")))
#else
#define CQC_HAVE_AVX2_KERNELS 0
#endif

namespace cqc::simd {

#if CQC_HAVE_AVX2_KERNELS

namespace {

// Cody-Waite split of pi/4 and minimax coefficients on [-pi/4, pi/4]
// (Cephes sin.c).
constexpr double kFourOverPi = 1.27323954473516268615;
constexpr double kDP1 = 7.85398125648498535156e-1;
constexpr double kDP2 = 3.77489470793079817668e-8;
constexpr double kDP3 = 2.69515142907905952645e-15;

constexpr std::array<double, 6> kSinCoef = {
    1.58962301576546568060e-10, -2.50507477628578072866e-8, 2.75573136213857245213e-6,
    -1.98412698295895385996e-4, 8.33333333332211858878e-3,  -1.66666666666666307295e-1,
};
constexpr std::array<double, 6> kCosCoef = {
    -1.13585365213876817300e-11, 2.08757008419747316778e-9, -2.75573141792967388112e-7,
    2.48015872888517045348e-5,   -1.38888888888730564116e-3, 4.16666666666665929218e-2,
};

CQC_TARGET_AVX2 inline __m256d horner(__m256d x, const std::array<double, 6>& c) {
  __m256d acc = _mm256_set1_pd(c[0]);
  for (std::size_t i = 1; i < c.size(); ++i) acc = _mm256_fmadd_pd(acc, x, _mm256_set1_pd(c[i]));
  return acc;
}

CQC_TARGET_AVX2 inline void sincos4(__m256d x, __m256d& s_out, __m256d& c_out) {
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  const __m256d ax = _mm256_andnot_pd(sign_bit, x);
  const __m256d x_sign = _mm256_and_pd(sign_bit, x);

  // Octant index, rounded up to even.
  __m256d y = _mm256_floor_pd(_mm256_mul_pd(ax, _mm256_set1_pd(kFourOverPi)));
  const __m256d odd = _mm256_sub_pd(y, _mm256_mul_pd(_mm256_set1_pd(2.0),
                                                     _mm256_floor_pd(_mm256_mul_pd(y, _mm256_set1_pd(0.5)))));
  y = _mm256_add_pd(y, odd);
  __m256d q = _mm256_sub_pd(y, _mm256_mul_pd(_mm256_set1_pd(8.0),
                                             _mm256_floor_pd(_mm256_mul_pd(y, _mm256_set1_pd(0.125)))));
  const __m256d upper = _mm256_cmp_pd(q, _mm256_set1_pd(4.0), _CMP_GE_OQ);
  q = _mm256_sub_pd(q, _mm256_and_pd(upper, _mm256_set1_pd(4.0)));
  const __m256d swap = _mm256_cmp_pd(q, _mm256_set1_pd(2.0), _CMP_EQ_OQ);

  __m256d z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDP1), ax);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDP2), z);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDP3), z);
  const __m256d zz = _mm256_mul_pd(z, z);

  const __m256d poly_s = _mm256_fmadd_pd(_mm256_mul_pd(z, zz), horner(zz, kSinCoef), z);
  const __m256d poly_c = _mm256_fmadd_pd(_mm256_mul_pd(zz, zz), horner(zz, kCosCoef),
                                         _mm256_fnmadd_pd(_mm256_set1_pd(0.5), zz, _mm256_set1_pd(1.0)));

  const __m256d sin_flip = _mm256_xor_pd(x_sign, _mm256_and_pd(upper, sign_bit));
  const __m256d cos_flip = _mm256_and_pd(_mm256_xor_pd(upper, swap), sign_bit);
  s_out = _mm256_xor_pd(_mm256_blendv_pd(poly_s, poly_c, swap), sin_flip);
  c_out = _mm256_xor_pd(_mm256_blendv_pd(poly_c, poly_s, swap), cos_flip);
}

CQC_TARGET_AVX2 inline __m256d profile4(const TrigQuadratic& f, __m256d u) {
  __m256d s, c;
  sincos4(_mm256_mul_pd(_mm256_set1_pd(f.omega), u), s, c);
  const __m256d poly = _mm256_mul_pd(u, _mm256_fmadd_pd(_mm256_set1_pd(f.quad), u, _mm256_set1_pd(f.lin)));
  __m256d acc = _mm256_fmadd_pd(_mm256_set1_pd(f.cos_c), c, _mm256_set1_pd(f.base));
  acc = _mm256_fmadd_pd(_mm256_set1_pd(f.sin_c), s, acc);
  return _mm256_add_pd(acc, poly);
}

}  // namespace

namespace avx2 {

// Tails go through the same vector path via a padded block, so a value's
// result never depends on its position in the array.
CQC_TARGET_AVX2 void sincos(std::span<const double> x, std::span<double> s, std::span<double> c) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vs, vc;
    sincos4(_mm256_loadu_pd(x.data() + i), vs, vc);
    _mm256_storeu_pd(s.data() + i, vs);
    _mm256_storeu_pd(c.data() + i, vc);
  }
  if (i < n) {
    alignas(32) double in[4] = {0.0, 0.0, 0.0, 0.0};
    alignas(32) double os[4], oc[4];
    for (std::size_t j = 0; i + j < n; ++j) in[j] = x[i + j];
    __m256d vs, vc;
    sincos4(_mm256_load_pd(in), vs, vc);
    _mm256_store_pd(os, vs);
    _mm256_store_pd(oc, vc);
    for (std::size_t j = 0; i + j < n; ++j) {
      s[i + j] = os[j];
      c[i + j] = oc[j];
    }
  }
}

CQC_TARGET_AVX2 void eval_profile(const TrigQuadratic& f, std::span<const double> u, std::span<double> out) {
  const std::size_t n = u.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out.data() + i, profile4(f, _mm256_loadu_pd(u.data() + i)));
  if (i < n) {
    alignas(32) double in[4] = {0.0, 0.0, 0.0, 0.0};
    alignas(32) double res[4];
    for (std::size_t j = 0; i + j < n; ++j) in[j] = u[i + j];
    _mm256_store_pd(res, profile4(f, _mm256_load_pd(in)));
    for (std::size_t j = 0; i + j < n; ++j) out[i + j] = res[j];
  }
}

}  // namespace avx2

bool avx2_compiled() { return true; }

#else

namespace avx2 {
void sincos(std::span<const double> x, std::span<double> s, std::span<double> c) { scalar::sincos(x, s, c); }
void eval_profile(const TrigQuadratic& f, std::span<const double> u, std::span<double> out) {
  scalar::eval_profile(f, u, out);
}
}  // namespace avx2

bool avx2_compiled() { return false; }

#endif

}  // namespace cqc::simd
