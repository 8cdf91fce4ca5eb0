#include <cmath>

#include <Eigen/Eigenvalues>

#include "biham/gqm.hpp"

namespace biham {

GnsRepresentation gns_construct(const ComplexMatrix& omega, double tol) {
  require_square(omega, "omega");
  const double herm = (omega - omega.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) fail(ErrorKind::NotAState, "state must be Hermitian", herm);
  const double tr = std::abs(omega.trace() - 1.0);
  if (tr > tol) fail(ErrorKind::NotAState, "state must have unit trace", tr);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (omega + omega.adjoint()));
  const RealVector& ev = es.eigenvalues();
  if (ev.minCoeff() < -tol) fail(ErrorKind::NotAState, "state must be positive", -ev.minCoeff());

  GnsRepresentation g;
  g.omega = omega;
  g.n = static_cast<int>(omega.rows());
  std::vector<int> keep;
  for (int k = g.n - 1; k >= 0; --k)
    if (ev(k) > tol) keep.push_back(k);
  g.m = static_cast<int>(keep.size());
  g.support.resize(g.n, g.m);
  g.weights.resize(g.m);
  for (int c = 0; c < g.m; ++c) {
    g.support.col(c) = es.eigenvectors().col(keep[static_cast<size_t>(c)]);
    g.weights(c) = ev(keep[static_cast<size_t>(c)]);
  }
  return g;
}

ComplexMatrix GnsRepresentation::pi(const ComplexMatrix& A) const {
  if (A.rows() != n || A.cols() != n) fail(ErrorKind::Dimension, "operator has wrong size");
  ComplexMatrix out = ComplexMatrix::Zero(n * m, n * m);
  for (int c = 0; c < m; ++c) out.block(c * n, c * n, n, n) = A;
  return out;
}

ComplexVector GnsRepresentation::vector_of(const ComplexMatrix& A) const {
  if (A.rows() != n || A.cols() != n) fail(ErrorKind::Dimension, "operator has wrong size");
  // columns sqrt(w_k) A x_k stacked; depends only on A modulo the Gelfand ideal
  ComplexVector v(n * m);
  for (int c = 0; c < m; ++c) v.segment(c * n, n) = std::sqrt(weights(c)) * (A * support.col(c));
  return v;
}

ComplexMatrix GnsRepresentation::pairing_gram() const {
  const int d = n * n;
  ComplexMatrix G(d, d);
  auto unit = [&](int e) {
    ComplexMatrix E = ComplexMatrix::Zero(n, n);
    E(e % n, e / n) = 1.0;
    return E;
  };
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) G(a, b) = (unit(b) * omega * unit(a).adjoint()).trace();
  return G;
}

bool GnsRepresentation::in_gelfand_ideal(const ComplexMatrix& A, double tol) const {
  return (A * support).cwiseAbs().maxCoeff() <= tol * std::max(1.0, A.cwiseAbs().maxCoeff());
}

}  // namespace biham
