#include <cmath>
#include <numbers>

#include "biham/parallel.hpp"
#include "biham/wwm.hpp"
#include "fft.hpp"

namespace biham {

using std::numbers::pi;

namespace {

const simd::KernelTable& table(const TransformOptions& opt) {
  return opt.kernels ? *opt.kernels : simd::active_kernels();
}

// phase[k][s + h] = e^{sigma i p_k 2 s dx / hbar}, s in [-h, h], h = N/2 - 1
std::vector<cplx> phase_table(const PhaseGrid& g, int sigma) {
  const int N = g.N, h = N / 2 - 1, w = 2 * h + 1;
  std::vector<cplx> t(static_cast<size_t>(N) * w);
  for (int k = 0; k < N; ++k)
    for (int s = -h; s <= h; ++s)
      t[static_cast<size_t>(k) * w + (s + h)] = std::polar(1.0, sigma * g.p(k) * 2.0 * s * g.dx() / g.hbar());
  return t;
}

}  // namespace

WignerFunction wigner_transform(const KernelOperator& o, const TransformOptions& opt) {
  const PhaseGrid& g = o.grid;
  const int N = g.N, sigma = sign_factor(opt.sign);
  WignerFunction W;
  W.grid = g;
  W.samples = ComplexMatrix::Zero(N, N);
  W.leakage = o.boundary_leakage();
  W.accuracy_warning = W.leakage > opt.leakage_threshold;
  const double scale = 2.0 * g.dx();

  if (g.is_aligned() && !opt.force_direct) {
    // p_k 2 s dx / hbar = -pi s + 2 pi k s / N on aligned grids
    ComplexMatrix b = ComplexMatrix::Zero(N, N);  // column c holds the sequence over s
    for (int c = 0; c < N; ++c) {
      const int m = std::min(c, N - 1 - c);
      for (int s = -m; s <= m; ++s) b((s + N) % N, c) = (s % 2 == 0 ? 1.0 : -1.0) * o.kernel(c + s, c - s);
    }
    fft::columns(b, sigma);
    W.samples = scale * b.transpose();
    return W;
  }

  const auto& kt = table(opt);
  const auto phases = phase_table(g, sigma);
  const int h = N / 2 - 1, w = 2 * h + 1;
  parallel_for(static_cast<size_t>(N), [&](size_t begin, size_t end) {
    std::vector<cplx> a(static_cast<size_t>(w));
    for (auto c = static_cast<int>(begin); c < static_cast<int>(end); ++c) {
      const int m = std::min(c, N - 1 - c);
      for (int s = -m; s <= m; ++s) a[static_cast<size_t>(s + h)] = o.kernel(c + s, c - s);
      const auto n = static_cast<size_t>(2 * m + 1);
      for (int k = 0; k < N; ++k) {
        double out[2];
        kt.cdot(reinterpret_cast<const double*>(a.data() + (h - m)),
                reinterpret_cast<const double*>(phases.data() + static_cast<size_t>(k) * w + (h - m)), n, out);
        W.samples(c, k) = scale * cplx(out[0], out[1]);
      }
    }
  });
  return W;
}

KernelOperator weyl_map(const GridFunction& f, const TransformOptions& opt) {
  const PhaseGrid& g = f.grid;
  if (!g.is_aligned() || opt.force_direct) return PhasePointFrame(g, opt.sign, opt.kernels).expand(f);
  const int N = g.N, sigma = sign_factor(opt.sign);
  // C_{c+s,c-s} = (2 dp / 2 pi hbar) (-1)^s sum_k f(c,k) e^{-sigma 2 pi i k s / N}
  ComplexMatrix F = f.samples.transpose();  // column c is f(c, .)
  fft::columns(F, -sigma);
  const double scale = 2.0 * g.dp() / (2.0 * pi * g.hbar());
  KernelOperator C = KernelOperator::zeros(g);
  for (int c = 0; c < N; ++c) {
    const int m = std::min(c, N - 1 - c);
    for (int s = -m; s <= m; ++s) C.kernel(c + s, c - s) = scale * (s % 2 == 0 ? 1.0 : -1.0) * F((s + N) % N, c);
  }
  return band_project(C);
}

KernelOperator oscillator_gibbs_kernel(const PhaseGrid& g) {
  const auto& c = g.constants;
  const double b = c.beta * c.hbar * c.omega;
  const double a = c.mass * c.omega / c.hbar;
  const double sh = std::sinh(b), ch = std::cosh(b);
  const double pref = std::sqrt(a / (2.0 * pi * sh));
  return KernelOperator::from_function(g, [&](double x, double y) {
    return cplx(pref * std::exp(-a / (2.0 * sh) * ((x * x + y * y) * ch - 2.0 * x * y)), 0.0);
  });
}

GridFunction oscillator_gibbs_wigner(const PhaseGrid& g) {
  const auto& c = g.constants;
  const double b = c.beta * c.hbar * c.omega;
  const double t = std::tanh(b / 2.0), amp = 1.0 / std::cosh(b / 2.0);
  return GridFunction::sample(g, [&](double q, double p) {
    const double e = c.mass * c.omega * q * q / c.hbar + p * p / (c.mass * c.hbar * c.omega);
    return cplx(amp * std::exp(-t * e), 0.0);
  });
}

double oscillator_partition_function(const ModelConstants& c) {
  c.validate();
  return 1.0 / (2.0 * std::sinh(c.beta * c.hbar * c.omega / 2.0));
}

ComplexVector oscillator_ground_state(const PhaseGrid& g) {
  const auto& c = g.constants;
  const double a = c.mass * c.omega / c.hbar;
  ComplexVector psi(g.N);
  for (int i = 0; i < g.N; ++i) psi(i) = std::exp(-0.5 * a * g.x(i) * g.x(i));
  return psi / std::sqrt(psi.squaredNorm() * g.dx());
}

}  // namespace biham
