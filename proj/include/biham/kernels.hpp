#pragma once

#include <cstddef>

// Inner loops shared by the grid transforms. Complex arrays are passed as
// interleaved (re, im) doubles, which is the layout of std::complex<double>[].
namespace biham::simd {

struct KernelTable {
  const char* name;
  // sum_i a_i * b_i over n complex entries (no conjugation); out[0..1] = (re, im).
  void (*cdot)(const double* a, const double* b, std::size_t n, double* out);
  // sum_i a_i * b_i over n real entries.
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i |a_i|^2 over n complex entries.
  double (*norm2)(const double* a, std::size_t n);
  // y_i += alpha * x_i over n complex entries.
  void (*caxpy)(double alpha_re, double alpha_im, const double* x, double* y, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the CPU lacks AVX2+FMA.
const KernelTable* avx2_kernels();
// Best available table; BIHAM_SIMD=scalar forces the reference kernels.
const KernelTable& active_kernels();

}  // namespace biham::simd

namespace biham::simd::detail {
extern const KernelTable avx2_table;
}
