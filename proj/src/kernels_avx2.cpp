// Compiled with -mavx2 -mfma; only reached through the dispatch table after a
// CPU check, so keep this TU free of inline library code.
#include <immintrin.h>

#include "biham/kernels.hpp"

namespace biham::simd {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void cdot_avx2(const double* a, const double* b, std::size_t n, double* out) {
  // prod accumulates (ar*br, ai*bi), cross accumulates (ar*bi, ai*br).
  __m256d prod0 = _mm256_setzero_pd(), prod1 = _mm256_setzero_pd();
  __m256d cross0 = _mm256_setzero_pd(), cross1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a0 = _mm256_loadu_pd(a + 2 * i);
    const __m256d b0 = _mm256_loadu_pd(b + 2 * i);
    const __m256d a1 = _mm256_loadu_pd(a + 2 * i + 4);
    const __m256d b1 = _mm256_loadu_pd(b + 2 * i + 4);
    prod0 = _mm256_fmadd_pd(a0, b0, prod0);
    prod1 = _mm256_fmadd_pd(a1, b1, prod1);
    cross0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0x5), cross0);
    cross1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0x5), cross1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d a0 = _mm256_loadu_pd(a + 2 * i);
    const __m256d b0 = _mm256_loadu_pd(b + 2 * i);
    prod0 = _mm256_fmadd_pd(a0, b0, prod0);
    cross0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0x5), cross0);
  }
  const __m256d prod = _mm256_add_pd(prod0, prod1);
  const __m256d cross = _mm256_add_pd(cross0, cross1);
  alignas(32) double p[4], c[4];
  _mm256_store_pd(p, prod);
  _mm256_store_pd(c, cross);
  double re = (p[0] - p[1]) + (p[2] - p[3]);
  double im = (c[0] + c[1]) + (c[2] + c[3]);
  for (; i < n; ++i) {
    const double ar = a[2 * i], ai = a[2 * i + 1];
    const double br = b[2 * i], bi = b[2 * i + 1];
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  out[0] = re;
  out[1] = im;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), s1);
  }
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double norm2_avx2(const double* a, std::size_t n) {
  const std::size_t m = 2 * n;
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    const __m256d x0 = _mm256_loadu_pd(a + i);
    const __m256d x1 = _mm256_loadu_pd(a + i + 4);
    s0 = _mm256_fmadd_pd(x0, x0, s0);
    s1 = _mm256_fmadd_pd(x1, x1, s1);
  }
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < m; ++i) s += a[i] * a[i];
  return s;
}

void caxpy_avx2(double are, double aim, const double* x, double* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(are);
  // (-aim, +aim) pattern pairs with the swapped x to form the imaginary mix.
  const __m256d ai = _mm256_setr_pd(-aim, aim, -aim, aim);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(x + 2 * i);
    __m256d yv = _mm256_loadu_pd(y + 2 * i);
    yv = _mm256_fmadd_pd(ar, xv, yv);
    yv = _mm256_fmadd_pd(ai, _mm256_permute_pd(xv, 0x5), yv);
    _mm256_storeu_pd(y + 2 * i, yv);
  }
  for (; i < n; ++i) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    y[2 * i] += are * xr - aim * xi;
    y[2 * i + 1] += are * xi + aim * xr;
  }
}

}  // namespace

namespace detail {
const KernelTable avx2_table{"avx2", cdot_avx2, dot_avx2, norm2_avx2, caxpy_avx2};
}

}  // namespace biham::simd
