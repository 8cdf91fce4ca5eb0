#include <cmath>
#include <numbers>

#include "biham/parallel.hpp"
#include "biham/wwm.hpp"

namespace biham {

using std::numbers::pi;

PhasePointFrame::PhasePointFrame(const PhaseGrid& g, MomentumSign sign, const simd::KernelTable* k)
    : grid_(g), sign_(sign), kern_(k ? k : &simd::active_kernels()) {
  if (g.N % 2 != 0) fail(ErrorKind::Grid, "phase-point operators need an even grid");
}

PhasePointFrame phase_point_frame(const PhaseGrid& g, MomentumSign sign) { return PhasePointFrame(g, sign); }

KernelOperator PhasePointFrame::raw_element(int c, int k) const {
  const int N = grid_.N;
  if (c < 0 || c >= N || k < 0 || k >= N) fail(ErrorKind::Grid, "phase-point index out of range");
  const int sigma = sign_factor(sign_);
  KernelOperator A = KernelOperator::zeros(grid_);
  const double p = grid_.p(k), dx = grid_.dx(), hb = grid_.hbar();
  const int m = std::min(c, N - 1 - c);
  for (int s = -m; s <= m; ++s)
    A.kernel(c + s, c - s) = (2.0 / dx) * std::polar(1.0, -sigma * p * 2.0 * s * dx / hb);
  return A;
}

GridFunction PhasePointFrame::coefficients(const KernelOperator& o) const {
  // Tr(O A) = 2 dx sum_s O_{c+s,c-s} e^{sigma i p 2 s dx/hbar}; always the direct sum
  TransformOptions opt;
  opt.sign = sign_;
  opt.force_direct = true;
  opt.kernels = kern_;
  WignerFunction w = wigner_transform(KernelOperator{grid_, o.kernel}, opt);
  return GridFunction{grid_, w.samples};
}

KernelOperator PhasePointFrame::expand(const GridFunction& f) const {
  const int N = grid_.N, sigma = sign_factor(sign_);
  const double dx = grid_.dx(), hb = grid_.hbar();
  const double scale = 2.0 * grid_.dp() / (2.0 * pi * hb);
  // rows of f are contiguous after the transpose
  const ComplexMatrix ft = f.samples.transpose();
  const int h = N / 2 - 1;
  // U[s + h][k] = e^{-sigma i p_k 2 s dx / hbar}
  std::vector<cplx> U(static_cast<size_t>(2 * h + 1) * N);
  for (int s = -h; s <= h; ++s)
    for (int k = 0; k < N; ++k)
      U[static_cast<size_t>(s + h) * N + k] = std::polar(1.0, -sigma * grid_.p(k) * 2.0 * s * dx / hb);
  KernelOperator C = KernelOperator::zeros(grid_);
  parallel_for(static_cast<size_t>(N), [&](size_t begin, size_t end) {
    for (auto c = static_cast<int>(begin); c < static_cast<int>(end); ++c) {
      const int m = std::min(c, N - 1 - c);
      const auto* row = reinterpret_cast<const double*>(ft.col(c).data());
      for (int s = -m; s <= m; ++s) {
        double out[2];
        kern_->cdot(row, reinterpret_cast<const double*>(U.data() + static_cast<size_t>(s + h) * N),
                    static_cast<size_t>(N), out);
        C.kernel(c + s, c - s) = scale * cplx(out[0], out[1]);
      }
    }
  });
  return band_project(C);
}

}  // namespace biham
