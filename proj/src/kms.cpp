#include <cmath>

#include "biham/wwm.hpp"

namespace biham {

namespace {

struct Sides {
  double lhs, rhs;
};

// Normalized Gibbs averages over the points with index step `stride`.
Sides kms_sides(const RealMatrix& w, const RealMatrix& a, const RealMatrix& b, double beta, int stride,
                const simd::KernelTable& kt) {
  double z = 0, sa = 0, sb = 0;
  const auto N = w.rows();
  std::vector<double> wr, ar, br;
  for (Eigen::Index j = 0; j < N; j += stride) {
    wr.clear();
    ar.clear();
    br.clear();
    for (Eigen::Index i = 0; i < N; i += stride) {
      wr.push_back(w(i, j));
      ar.push_back(a(i, j));
      br.push_back(b(i, j));
    }
    for (double v : wr) z += v;
    sa += kt.dot(wr.data(), ar.data(), wr.size());
    sb += kt.dot(wr.data(), br.data(), wr.size());
  }
  return {sa / z, beta * sb / z};
}

RealMatrix real_samples(const PhaseGrid& g, const PhasePolynomial& f) {
  const GridFunction s = GridFunction::from_poly(g, f);
  if (s.max_imag() > 1e-12 * std::max(1.0, s.sup_norm()))
    fail(ErrorKind::Domain, "KMS check needs real observables");
  return s.samples.real();
}

}  // namespace

KmsResult classical_kms_check(const PhasePolynomial& H, const PhasePolynomial& f, const PhasePolynomial& g,
                              double beta, const PhaseGrid& grid, const simd::KernelTable* k) {
  if (H.nvars() != 2 || f.nvars() != 2 || g.nvars() != 2)
    fail(ErrorKind::Dimension, "KMS check runs on one degree of freedom");
  if (!(beta > 0)) fail(ErrorKind::Domain, "beta must be positive");
  const auto& kt = k ? *k : simd::active_kernels();
  // classical observables: drop any hbar dependence
  const PhasePolynomial Hc = H.hbar_part(0), fc = f.hbar_part(0), gc = g.hbar_part(0);
  const RealMatrix h = real_samples(grid, Hc);
  const double hmin = h.minCoeff();
  const RealMatrix w = (-beta * (h.array() - hmin)).exp().matrix();
  const RealMatrix lhs = real_samples(grid, poisson_bracket_poly(fc, gc));
  const RealMatrix rhs = real_samples(grid, gc * poisson_bracket_poly(fc, Hc));

  KmsResult r;
  const Sides full = kms_sides(w, lhs, rhs, beta, 1, kt);
  const Sides half = kms_sides(w, lhs, rhs, beta, 2, kt);
  r.lhs = full.lhs;
  r.rhs = full.rhs;
  r.residual = std::abs(full.lhs - full.rhs);
  r.quadrature_error = std::max(std::abs(full.lhs - half.lhs), std::abs(full.rhs - half.rhs));
  const auto N = grid.N;
  double edge = 0.0;
  for (int e : {0, N - 1}) {
    edge = std::max(edge, w.row(e).maxCoeff());
    edge = std::max(edge, w.col(e).maxCoeff());
  }
  r.boundary_weight = edge / w.maxCoeff();
  r.accuracy_warning = r.boundary_weight > 1e-12;
  return r;
}

}  // namespace biham
