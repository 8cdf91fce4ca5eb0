#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>

#include "biham/wwm.hpp"
#include "fft.hpp"

namespace biham {

using std::numbers::pi;

PhaseGrid::PhaseGrid(int n, double lq, double lp, ModelConstants c) : N(n), Lq(lq), Lp(lp), constants(c) {
  if (n < 4 || n % 2 != 0) fail(ErrorKind::Grid, "grid size must be even and at least 4, got " + std::to_string(n));
  if (!(lq > 0) || !(lp > 0) || !std::isfinite(lq) || !std::isfinite(lp))
    fail(ErrorKind::Grid, "box half-widths must be positive");
  constants.validate();
}

PhaseGrid PhaseGrid::aligned(int n, double lq, ModelConstants c) {
  if (!(lq > 0)) fail(ErrorKind::Grid, "box half-width must be positive");
  return PhaseGrid(n, lq, pi * c.hbar * n / (4.0 * lq), c);
}

double PhaseGrid::cell() const { return dq() * dp() / (2.0 * pi * hbar()); }

bool PhaseGrid::is_aligned(double tol) const {
  return std::abs(dp() * 2.0 * dx() / hbar() - 2.0 * pi / N) <= tol * 2.0 * pi / N;
}

PhaseGrid PhaseGrid::dual() const { return PhaseGrid(N, pi / dq(), pi / dp(), constants); }

GridFunction GridFunction::zeros(const PhaseGrid& g) { return GridFunction{g, ComplexMatrix::Zero(g.N, g.N)}; }

GridFunction GridFunction::sample(const PhaseGrid& g, const std::function<cplx(double, double)>& f) {
  GridFunction r = zeros(g);
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i) r.samples(i, j) = f(g.q(i), g.p(j));
  return r;
}

GridFunction GridFunction::from_poly(const PhaseGrid& g, const PhasePolynomial& f) {
  if (f.nvars() != 2) fail(ErrorKind::Dimension, "grid functions live on one degree of freedom");
  const double h = g.hbar();
  return sample(g, [&](double q, double p) {
    const double x[2] = {q, p};
    return f.evaluate(x, h);
  });
}

cplx GridFunction::phase_trace() const { return samples.sum() * grid.cell(); }

KernelOperator KernelOperator::zeros(const PhaseGrid& g) { return KernelOperator{g, ComplexMatrix::Zero(g.N, g.N)}; }

KernelOperator KernelOperator::lattice_identity(const PhaseGrid& g) {
  KernelOperator k = zeros(g);
  k.kernel.diagonal().setConstant(1.0 / g.dx());
  return k;
}

KernelOperator KernelOperator::band_identity(const PhaseGrid& g) {
  return KernelOperator{g, band_project_columns(lattice_identity(g).kernel)};
}

KernelOperator KernelOperator::projector(const PhaseGrid& g, const ComplexVector& psi) {
  if (psi.size() != g.N) fail(ErrorKind::Dimension, "wavefunction length must equal N");
  const double nrm2 = psi.squaredNorm() * g.dx();
  if (!(nrm2 > 0)) fail(ErrorKind::Domain, "zero wavefunction");
  const ComplexVector u = psi / std::sqrt(nrm2);
  return KernelOperator{g, u * u.adjoint()};
}

KernelOperator KernelOperator::from_function(const PhaseGrid& g, const std::function<cplx(double, double)>& f) {
  KernelOperator k = zeros(g);
  for (int b = 0; b < g.N; ++b)
    for (int a = 0; a < g.N; ++a) k.kernel(a, b) = f(g.x(a), g.x(b));
  return k;
}

cplx KernelOperator::trace() const { return kernel.trace() * grid.dx(); }

double KernelOperator::hs_norm2() const {
  const double dx = grid.dx();
  return simd::active_kernels().norm2(reinterpret_cast<const double*>(kernel.data()),
                                      static_cast<size_t>(kernel.size())) *
         dx * dx;
}

KernelOperator KernelOperator::adjoint() const { return KernelOperator{grid, kernel.adjoint()}; }

static void same_grid(const KernelOperator& a, const KernelOperator& b) {
  if (a.grid.N != b.grid.N || a.grid.Lq != b.grid.Lq) fail(ErrorKind::Grid, "kernels live on different grids");
}

KernelOperator KernelOperator::operator*(const KernelOperator& o) const {
  same_grid(*this, o);
  return KernelOperator{grid, (kernel * o.kernel) * grid.dx()};
}

KernelOperator KernelOperator::operator+(const KernelOperator& o) const {
  same_grid(*this, o);
  return KernelOperator{grid, kernel + o.kernel};
}

KernelOperator KernelOperator::operator-(const KernelOperator& o) const {
  same_grid(*this, o);
  return KernelOperator{grid, kernel - o.kernel};
}

KernelOperator KernelOperator::operator*(cplx s) const { return KernelOperator{grid, kernel * s}; }

bool KernelOperator::is_hermitian(double tol) const {
  return (kernel - kernel.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, kernel.cwiseAbs().maxCoeff());
}

double KernelOperator::boundary_leakage() const {
  const double top = kernel.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0.0;
  const int N = grid.N;
  double edge = 0.0;
  for (int e : {0, 1, N - 2, N - 1}) {
    edge = std::max(edge, kernel.row(e).cwiseAbs().maxCoeff());
    edge = std::max(edge, kernel.col(e).cwiseAbs().maxCoeff());
  }
  return edge / top;
}

ComplexMatrix band_project_columns(const ComplexMatrix& K) {
  // x_b p_m/hbar = -pi m + 2 pi b m / N, and the two (-1)^m factors cancel,
  // so the band projector is a plain DFT low-pass.
  const auto N = K.rows();
  ComplexMatrix m = K;
  fft::columns(m, -1);
  const auto lo = N / 4, hi = N - N / 4;
  m.middleRows(lo, hi - lo).setZero();
  fft::columns(m, +1);
  return m / static_cast<double>(N);
}

KernelOperator band_project(const KernelOperator& o) {
  const ComplexMatrix pk = band_project_columns(o.kernel);
  const ComplexMatrix pkp = band_project_columns(pk.adjoint()).adjoint();
  return KernelOperator{o.grid, pkp};
}

namespace {

// (-1)^(i+j) mask applied in place
void checker(ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = (j % 2 == 0) ? 1 : 0; i < m.rows(); i += 2) m(i, j) = -m(i, j);
}

}  // namespace

GridFunction symplectic_fourier(const GridFunction& f, bool inverse) {
  const PhaseGrid& g = f.grid;
  const PhaseGrid d = g.dual();
  ComplexMatrix m = f.samples;
  checker(m);
  // forward: e^{-i q eta} along q, e^{+i p xi} along p; inverse flips both
  fft::columns(m, inverse ? +1 : -1);
  fft::rows(m, inverse ? -1 : +1);
  checker(m);
  m *= g.dq() * g.dp() / (2.0 * pi);
  return GridFunction{d, m};
}

GridFunction plane_wave_synthesis(const GridFunction& F, const PhaseGrid& primal) {
  const PhaseGrid& d = F.grid;
  if (d.N != primal.N) fail(ErrorKind::Grid, "dual and primal grids differ in size");
  ComplexMatrix m = F.samples;
  checker(m);
  fft::columns(m, +1);
  fft::rows(m, +1);
  checker(m);
  m *= d.dq() * d.dp() / (2.0 * pi);
  return GridFunction{primal, m};
}

void write_csv(const GridFunction& f, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) fail(ErrorKind::Domain, "cannot open " + path);
  std::fprintf(out, "q,p,re,im\n");
  for (int i = 0; i < f.grid.N; ++i)
    for (int j = 0; j < f.grid.N; ++j)
      std::fprintf(out, "%.17g,%.17g,%.17g,%.17g\n", f.grid.q(i), f.grid.p(j), f.samples(i, j).real(),
                   f.samples(i, j).imag());
  std::fclose(out);
}

void write_kernel_csv(const KernelOperator& o, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) fail(ErrorKind::Domain, "cannot open " + path);
  std::fprintf(out, "x,xp,re,im\n");
  for (int a = 0; a < o.grid.N; ++a)
    for (int b = 0; b < o.grid.N; ++b)
      std::fprintf(out, "%.17g,%.17g,%.17g,%.17g\n", o.grid.x(a), o.grid.x(b), o.kernel(a, b).real(),
                   o.kernel(a, b).imag());
  std::fclose(out);
}

// Layout: 8-byte magic, int64 N, doubles Lq Lp hbar, then four columns of N*N
// doubles (q, p, re, im) in row order of (q_i, p_j).
static const char kMagic[8] = {'B', 'I', 'H', 'A', 'M', 'G', 'F', '1'};

void write_binary(const GridFunction& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Domain, "cannot open " + path);
  const int N = f.grid.N;
  const std::int64_t n64 = N;
  const double hdr[3] = {f.grid.Lq, f.grid.Lp, f.grid.hbar()};
  out.write(kMagic, 8);
  out.write(reinterpret_cast<const char*>(&n64), sizeof n64);
  out.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
  std::vector<double> col(static_cast<size_t>(N) * N);
  for (int c = 0; c < 4; ++c) {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        double v = 0;
        switch (c) {
          case 0: v = f.grid.q(i); break;
          case 1: v = f.grid.p(j); break;
          case 2: v = f.samples(i, j).real(); break;
          default: v = f.samples(i, j).imag(); break;
        }
        col[static_cast<size_t>(i) * N + j] = v;
      }
    out.write(reinterpret_cast<const char*>(col.data()), static_cast<std::streamsize>(col.size() * sizeof(double)));
  }
}

GridFunction read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Domain, "cannot open " + path);
  char magic[8];
  std::int64_t n64 = 0;
  double hdr[3];
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&n64), sizeof n64);
  in.read(reinterpret_cast<char*>(hdr), sizeof hdr);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) fail(ErrorKind::Domain, path + " is not a grid function file");
  ModelConstants c;
  c.hbar = hdr[2];
  GridFunction f = GridFunction::zeros(PhaseGrid(static_cast<int>(n64), hdr[0], hdr[1], c));
  const int N = f.grid.N;
  std::vector<double> col(static_cast<size_t>(N) * N);
  for (int k = 0; k < 4; ++k) {
    in.read(reinterpret_cast<char*>(col.data()), static_cast<std::streamsize>(col.size() * sizeof(double)));
    if (!in) fail(ErrorKind::Domain, path + " is truncated");
    if (k < 2) continue;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const double v = col[static_cast<size_t>(i) * N + j];
        if (k == 2) f.samples(i, j).real(v);
        else f.samples(i, j).imag(v);
      }
  }
  return f;
}

}  // namespace biham
