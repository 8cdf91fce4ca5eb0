#include "biham/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace biham::simd {
namespace {

void cdot_scalar(const double* a, const double* b, std::size_t n, double* out) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[2 * i], ai = a[2 * i + 1];
    const double br = b[2 * i], bi = b[2 * i + 1];
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  out[0] = re;
  out[1] = im;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double norm2_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) s += a[i] * a[i];
  return s;
}

void caxpy_scalar(double are, double aim, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    y[2 * i] += are * xr - aim * xi;
    y[2 * i + 1] += are * xi + aim * xr;
  }
}

const KernelTable scalar_table{"scalar", cdot_scalar, dot_scalar, norm2_scalar, caxpy_scalar};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

}  // namespace

const KernelTable& scalar_kernels() { return scalar_table; }

const KernelTable* avx2_kernels() {
  static const bool ok = cpu_has_avx2();
  return ok ? &detail::avx2_table : nullptr;
}

const KernelTable& active_kernels() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("BIHAM_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar_table;
    const KernelTable* v = avx2_kernels();
    return v ? v : &scalar_table;
  }();
  return *chosen;
}

}  // namespace biham::simd
