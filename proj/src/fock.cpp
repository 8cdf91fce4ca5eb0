#include <cmath>

#include <Eigen/Eigenvalues>

#include "biham/gqm.hpp"

namespace biham {

namespace {

// exp(-beta H) for Hermitian H
ComplexMatrix gibbs(const ComplexMatrix& H, double beta) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (H + H.adjoint()));
  const RealVector w = (-beta * es.eigenvalues().array()).exp();
  return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

DeformedFock deformed_fock(const std::function<double(int)>& f, int N, double beta) {
  if (N < 2) fail(ErrorKind::Domain, "truncation needs N >= 2");
  if (!(beta > 0)) fail(ErrorKind::Domain, "beta must be positive");
  DeformedFock d;
  d.N = N;
  for (int k = 0; k < N; ++k) {
    const double v = f(k);
    if (!(v > 0) || !std::isfinite(v)) fail(ErrorKind::Domain, "f must be positive at level " + std::to_string(k), v);
    d.f.push_back(v);
  }
  d.a = ComplexMatrix::Zero(N, N);
  for (int k = 1; k < N; ++k) d.a(k - 1, k) = std::sqrt(static_cast<double>(k));
  d.adag = d.a.adjoint();
  d.number = d.adag * d.a;
  ComplexMatrix F = ComplexMatrix::Zero(N, N), Finv = ComplexMatrix::Zero(N, N);
  for (int k = 0; k < N; ++k) {
    F(k, k) = d.f[static_cast<size_t>(k)];
    Finv(k, k) = 1.0 / d.f[static_cast<size_t>(k)];
  }
  d.A = F * d.a;
  d.Adag = d.adag * F;
  d.Adag2 = Finv * d.a;
  d.commutator = d.Adag2 * d.Adag - d.Adag * d.Adag2;
  const int m = N - 1;
  d.commutator_residual =
      (d.commutator.topLeftCorner(m, m) - ComplexMatrix::Identity(m, m)).cwiseAbs().maxCoeff();

  const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(N, N);
  const ComplexMatrix H1 = d.number + half;
  d.Z1 = gibbs(H1, beta).diagonal().real().sum();
  // |n>_2 = C|n>, 2<n| = <n|C^{-1}, C = diag(prod_{k<n} f(k)); H2 in that frame
  ComplexMatrix C = ComplexMatrix::Zero(N, N), Cinv = ComplexMatrix::Zero(N, N);
  double c = 1.0;
  for (int k = 0; k < N; ++k) {
    C(k, k) = c;
    Cinv(k, k) = 1.0 / c;
    c *= d.f[static_cast<size_t>(k)];
  }
  const ComplexMatrix H2 = d.Adag * d.Adag2 + half;
  d.Z2 = (Cinv * gibbs(H2, beta) * C).trace().real();
  d.partition_residual = std::abs(d.Z1 - d.Z2);
  return d;
}

}  // namespace biham
