#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "biham/recursion.hpp"
#include "biham/spectral.hpp"

namespace biham {

RecursionOperator recursion_from_pair(const RealMatrix& omega1, const RealMatrix& omega2, double tol) {
  const auto w1 = ConstantSymplectic::from_omega(omega1);
  require_square(omega2, "omega2");
  if (omega2.rows() != omega1.rows()) fail(ErrorKind::Dimension, "forms have different dimensions");
  if ((omega2 + omega2.transpose()).norm() > 1e-12 * std::max(1.0, omega2.norm()))
    fail(ErrorKind::Domain, "omega2 must be skew-symmetric");
  RecursionOperator r;
  r.T = w1.Lambda * omega2;
  const double scale = std::max(1.0, omega1.norm() * r.T.norm());
  r.compat_residual = (r.T.transpose() * omega1 - omega1 * r.T).norm() / scale;
  r.compatible = r.compat_residual <= tol;
  r.kernel_dimension = static_cast<int>(r.T.rows()) - numeric_rank(r.T, 1e-6);
  return r;
}

InvariantChain invariant_chain(const RealMatrix& T, const RealMatrix& omega, const QuadraticHamiltonian& H, int kmax,
                               double tol) {
  require_square(T, "T");
  if (T.rows() != H.H.rows() || T.rows() != omega.rows()) fail(ErrorKind::Dimension, "T, omega, H sizes differ");
  if (kmax < 0) fail(ErrorKind::Domain, "kmax must be non-negative");
  const auto w = ConstantSymplectic::from_omega(omega);
  InvariantChain c;
  const double tn = std::max(1.0, T.norm());
  c.exact = (T.transpose() * H.H - H.H.transpose() * T).norm() <= tol * tn * std::max(1.0, H.H.norm());

  RealMatrix P = H.H;
  const Eigen::Index d = T.rows();
  RealMatrix stack(d * d, 0);
  int rank = 0;
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) P = T.transpose() * P;
    const RealMatrix sym = 0.5 * (P + P.transpose());
    const double skew = 0.5 * (P - P.transpose()).norm() / std::max(1e-300, P.norm());
    if (P.norm() > 0) c.max_antisymmetric = std::max(c.max_antisymmetric, skew);
    c.H.emplace_back(sym);
    stack.conservativeResize(d * d, k + 1);
    stack.col(k) = Eigen::Map<const RealVector>(sym.data(), d * d);
    const int r = numeric_rank(stack, 1e-6);
    if (r == rank && c.stops_at < 0) c.stops_at = k;
    rank = r;
  }
  c.independent = rank;
  for (size_t a = 0; a < c.H.size(); ++a)
    for (size_t b = a + 1; b < c.H.size(); ++b)
      c.max_involution = std::max(c.max_involution, involution_residual(c.H[a].H, c.H[b].H, w.Lambda));
  if (c.max_involution > tol)
    fail(ErrorKind::Inconsistency, "chain members are not in involution", c.max_involution);
  return c;
}

AlgebraEndomorphism AlgebraEndomorphism::left_multiplication(const ComplexMatrix& K) {
  require_square(K, "K");
  AlgebraEndomorphism t;
  t.n = static_cast<int>(K.rows());
  t.apply = [K](const ComplexMatrix& a) -> ComplexMatrix { return K * a; };
  return t;
}

AlgebraEndomorphism AlgebraEndomorphism::inner_derivation(const ComplexMatrix& X) {
  require_square(X, "X");
  AlgebraEndomorphism t;
  t.n = static_cast<int>(X.rows());
  t.apply = [X](const ComplexMatrix& a) -> ComplexMatrix { return X * a - a * X; };
  return t;
}

AlgebraEndomorphism AlgebraEndomorphism::from_matrix(const ComplexMatrix& L) {
  require_square(L, "L");
  const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(L.rows()))));
  if (n * n != L.rows()) fail(ErrorKind::Dimension, "endomorphism matrix must be n^2 x n^2");
  AlgebraEndomorphism t;
  t.n = n;
  t.apply = [L, n](const ComplexMatrix& a) -> ComplexMatrix {
    ComplexVector v = L * Eigen::Map<const ComplexVector>(a.data(), n * n);
    return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
  };
  return t;
}

static void check_operand(const AlgebraEndomorphism& T, const ComplexMatrix& a) {
  if (a.rows() != T.n || a.cols() != T.n) fail(ErrorKind::Dimension, "algebra element has wrong size");
}

ComplexMatrix hochschild_star(const AlgebraEndomorphism& T, const ComplexMatrix& a, const ComplexMatrix& b) {
  check_operand(T, a);
  check_operand(T, b);
  return T(a) * b + a * T(b) - T(a * b);
}

double derivation_defect(const AlgebraEndomorphism& T) {
  const int n = T.n;
  double worst = 0.0;
  for (int e1 = 0; e1 < n * n; ++e1)
    for (int e2 = 0; e2 < n * n; ++e2) {
      ComplexMatrix a = ComplexMatrix::Zero(n, n), b = ComplexMatrix::Zero(n, n);
      a(e1 % n, e1 / n) = 1.0;
      b(e2 % n, e2 / n) = 1.0;
      worst = std::max(worst, hochschild_star(T, a, b).cwiseAbs().maxCoeff());
    }
  return worst;
}

bool derivation_test(const AlgebraEndomorphism& T, double tol) { return derivation_defect(T) <= tol; }

ComplexMatrix algebra_torsion(const AlgebraEndomorphism& T, const ComplexMatrix& a, const ComplexMatrix& b) {
  return T(hochschild_star(T, a, b)) - T(a) * T(b);
}

}  // namespace biham
