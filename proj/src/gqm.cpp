#include <cmath>

#include <Eigen/Eigenvalues>

#include "biham/gqm.hpp"
#include "biham/structures.hpp"

namespace biham {

double PureState::defect(const ComplexMatrix& rho) {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const double tr = std::abs(rho.trace() - 1.0);
  const double idem = (rho * rho - rho).cwiseAbs().maxCoeff();
  return std::max({herm, tr, idem});
}

PureState PureState::from_matrix(const ComplexMatrix& rho, double tol) {
  require_square(rho, "rho");
  const double d = defect(rho);
  if (d > tol) fail(ErrorKind::NotAState, "not a rank-one projector", d);
  return PureState{rho};
}

PureState PureState::from_vector(const ComplexVector& psi) {
  const double nrm = psi.norm();
  if (psi.size() == 0 || nrm == 0.0) fail(ErrorKind::Domain, "zero vector has no ray");
  const ComplexVector u = psi / nrm;
  return PureState{u * u.adjoint()};
}

PureState superpose(const PureState& rho1, const PureState& rho2, const PureState& rho0, cplx c1, cplx c2,
                    double tol) {
  if (rho1.dim() != rho2.dim() || rho1.dim() != rho0.dim()) fail(ErrorKind::Dimension, "states of different size");
  const double norm = std::norm(c1) + std::norm(c2);
  if (std::abs(norm - 1.0) > tol) fail(ErrorKind::Domain, "|c1|^2 + |c2|^2 must be 1", std::abs(norm - 1.0));
  const double overlap = transition_probability(rho1, rho2);
  if (overlap > tol) fail(ErrorKind::Domain, "inputs must be orthogonal", overlap);
  const std::array<const ComplexMatrix*, 2> r{&rho1.rho, &rho2.rho};
  const std::array<cplx, 2> c{c1, c2};
  for (int i = 0; i < 2; ++i) {
    const double t = transition_probability(i == 0 ? rho1 : rho2, rho0);
    if (t <= tol) fail(ErrorKind::DegenerateFiducial, "fiducial projector is orthogonal to an input", t);
  }
  const ComplexMatrix& r0 = rho0.rho;
  ComplexMatrix out = ComplexMatrix::Zero(rho0.dim(), rho0.dim());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const cplx w = c[i] * std::conj(c[j]);
      if (w == cplx{}) continue;
      const ComplexMatrix m = *r[i] * r0 * *r[j];
      const double den = std::sqrt(std::abs((m * r0).trace()));
      out += w * m / den;
    }
  return PureState{out};
}

double transition_probability(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::Dimension, "states of different size");
  return (a.rho * b.rho).trace().real();
}

ComplexMatrix momentum_map(const ComplexVector& x) {
  if (x.size() == 0 || x.norm() == 0.0) fail(ErrorKind::Domain, "momentum map needs a nonzero vector");
  return x * x.adjoint();
}

const std::array<ComplexMatrix, 4>& pauli() {
  static const std::array<ComplexMatrix, 4> s = [] {
    const cplx i(0.0, 1.0);
    std::array<ComplexMatrix, 4> m;
    for (auto& x : m) x = ComplexMatrix::Zero(2, 2);
    m[0] << 1.0, 0.0, 0.0, 1.0;
    m[1] << 0.0, 1.0, 1.0, 0.0;
    m[2] << 0.0, -i, i, 0.0;
    m[3] << 1.0, 0.0, 0.0, -1.0;
    return m;
  }();
  return s;
}

ComplexMatrix UStarElement::matrix() const {
  const auto& s = pauli();
  return y0 * s[0] + y(0) * s[1] + y(1) * s[2] + y(2) * s[3];
}

UStarElement UStarElement::from_matrix(const ComplexMatrix& A) {
  if (A.rows() != 2 || A.cols() != 2) fail(ErrorKind::Dimension, "u* coordinates need a 2x2 matrix");
  if ((A - A.adjoint()).cwiseAbs().maxCoeff() > 1e-12) fail(ErrorKind::Domain, "matrix must be Hermitian");
  const auto& s = pauli();
  UStarElement e;
  e.y0 = 0.5 * (s[0] * A).trace().real();
  for (int k = 0; k < 3; ++k) e.y(k) = 0.5 * (s[static_cast<size_t>(k + 1)] * A).trace().real();
  return e;
}

PureState bloch_state(double theta, double phi) {
  const cplx i(0.0, 1.0);
  ComplexMatrix r(2, 2);
  const double s = std::sin(theta);
  r << std::pow(std::sin(theta / 2), 2), 0.5 * std::exp(i * phi) * s, 0.5 * std::exp(-i * phi) * s,
      std::pow(std::cos(theta / 2), 2);
  return PureState{r};
}

double BlochTensors::poisson(const UStarElement& a, const UStarElement& b) const {
  Eigen::Vector4d va(a.y0, a.y(0), a.y(1), a.y(2)), vb(b.y0, b.y(0), b.y(1), b.y(2));
  return va.dot(I * vb);
}

double BlochTensors::jordan(const UStarElement& a, const UStarElement& b) const {
  Eigen::Vector4d va(a.y0, a.y(0), a.y(1), a.y(2)), vb(b.y0, b.y(0), b.y(1), b.y(2));
  return va.dot(R * vb);
}

BlochTensors bloch_geometry(const Eigen::Vector3d& xi, double tol) {
  const double r2 = xi.squaredNorm();
  if (std::abs(r2 - 0.25) > tol) fail(ErrorKind::Domain, "Bloch point must satisfy xi^2 = 1/4", std::abs(r2 - 0.25));
  BlochTensors t;
  t.xi = xi;
  const double xi0 = 0.5;
  t.R = 2.0 * xi0 * Eigen::Matrix4d::Identity();
  for (int k = 0; k < 3; ++k) t.R(0, k + 1) = t.R(k + 1, 0) = 2.0 * xi(k);
  t.I.setZero();
  t.I(2, 3) = 2.0 * xi(0);
  t.I(3, 1) = 2.0 * xi(1);
  t.I(1, 2) = 2.0 * xi(2);
  t.I = t.I - t.I.transpose().eval();

  // tangent basis: Gram-Schmidt on e1,e2,e3 against xi, keep the two largest
  const Eigen::Vector3d n = xi.normalized();
  std::vector<Eigen::Vector3d> basis;
  for (int k = 0; k < 3 && basis.size() < 2; ++k) {
    Eigen::Vector3d v = Eigen::Vector3d::Unit(k) - n * n(k);
    for (const auto& b : basis) v -= b * b.dot(v);
    if (v.norm() > 1e-6) basis.push_back(v.normalized());
  }
  t.tangent.col(0) = basis[0];
  t.tangent.col(1) = basis[1];
  Eigen::Matrix3d cross;
  cross << 0, -xi(2), xi(1), xi(2), 0, -xi(0), -xi(1), xi(0), 0;
  t.j_ambient = 2.0 * cross;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const Eigen::Vector3d u = t.tangent.col(a), v = t.tangent.col(b);
      t.eta(a, b) = t.eta_of(u, v);
      t.sigma(a, b) = t.sigma_of(u, v);
      t.j(a, b) = u.dot(t.j_ambient * v);
    }
  return t;
}

namespace {

struct HermParts {
  ComplexMatrix h, a;  // A = h + i a
};

HermParts split(const ComplexMatrix& A) {
  const cplx i(0.0, 1.0);
  return {0.5 * (A + A.adjoint()), (A - A.adjoint()) / (2.0 * i)};
}

RealVector realvec(const ComplexVector& x) {
  RealVector u(2 * x.size());
  u << x.real(), x.imag();
  return u;
}

ComplexVector normalized(const ComplexVector& x) {
  const double n = x.norm();
  if (n == 0.0) fail(ErrorKind::Domain, "Kahler functions are undefined at the origin");
  return x / n;
}

void check_sizes(const ComplexMatrix& A, const ComplexVector& x) {
  require_square(A, "A");
  if (A.rows() != x.size()) fail(ErrorKind::Dimension, "operator and vector sizes differ");
}

}  // namespace

cplx kahler_function(const ComplexMatrix& A, const ComplexVector& x) {
  check_sizes(A, x);
  return x.dot(A * x) / x.squaredNorm();
}

ComplexVector kahler_gradient(const ComplexMatrix& A, const ComplexVector& x) {
  check_sizes(A, x);
  const ComplexVector xn = normalized(x);
  const auto [h, a] = split(A);
  const RealVector u = realvec(xn);
  const RealMatrix Mh = realify(h), Ma = realify(a);
  const double fh = u.dot(Mh * u), fa = u.dot(Ma * u);
  const cplx i(0.0, 1.0);
  return (2.0 * (Mh * u - fh * u)).cast<cplx>() + i * (2.0 * (Ma * u - fa * u)).cast<cplx>();
}

cplx metric_bracket(const ComplexMatrix& A, const ComplexMatrix& B, const ComplexVector& x) {
  return 0.5 * kahler_gradient(A, x).transpose() * kahler_gradient(B, x);
}

cplx jordan_bracket(const ComplexMatrix& A, const ComplexMatrix& B, const ComplexVector& x) {
  return metric_bracket(A, B, x) + 2.0 * kahler_function(A, x) * kahler_function(B, x);
}

cplx symplectic_bracket(const ComplexMatrix& A, const ComplexMatrix& B, const ComplexVector& x) {
  const auto n = x.size();
  RealMatrix L = RealMatrix::Zero(2 * n, 2 * n);
  L.topRightCorner(n, n).setIdentity();
  L.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  const ComplexVector ga = kahler_gradient(A, x), gb = kahler_gradient(B, x);
  return 0.5 * ga.transpose() * (L.cast<cplx>() * gb);
}

cplx kahler_star(const ComplexMatrix& A, const ComplexMatrix& B, const ComplexVector& x) {
  const cplx i(0.0, 1.0);
  return kahler_function(A, x) * kahler_function(B, x) +
         0.5 * (metric_bracket(A, B, x) + i * symplectic_bracket(A, B, x));
}

QuadraticBracketReport quadratic_bracket_check(const ComplexMatrix& A, const ComplexMatrix& B,
                                               const std::vector<ComplexVector>& xs) {
  const cplx i(0.0, 1.0);
  const ComplexMatrix jordan = A * B + B * A;
  const ComplexMatrix comm = (A * B - B * A) / i;
  const ComplexMatrix prod = A * B;
  QuadraticBracketReport r;
  for (const auto& x : xs) {
    r.jordan = std::max(r.jordan, std::abs(jordan_bracket(A, B, x) - kahler_function(jordan, x)));
    r.symplectic = std::max(r.symplectic, std::abs(symplectic_bracket(A, B, x) - kahler_function(comm, x)));
    r.star = std::max(r.star, std::abs(kahler_star(A, B, x) - kahler_function(prod, x)));
  }
  return r;
}

KDeformedReport k_deformed_algebra(const ComplexMatrix& K, const ComplexMatrix& H, const ComplexMatrix& A,
                                   const ComplexMatrix& B, double hbar, double tol) {
  require_square(K, "K");
  if (H.rows() != K.rows() || A.rows() != K.rows() || B.rows() != K.rows() || H.cols() != K.cols() ||
      A.cols() != K.cols() || B.cols() != K.cols())
    fail(ErrorKind::Dimension, "K, H, A, B must share one size");
  if (!(hbar > 0)) fail(ErrorKind::Domain, "hbar must be positive");
  const double scale = std::max(1.0, K.norm());
  if ((K - K.adjoint()).norm() > tol * scale) fail(ErrorKind::Domain, "K must be Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (K + K.adjoint()));
  if (es.eigenvalues().minCoeff() <= 0) fail(ErrorKind::Domain, "K must be positive", es.eigenvalues().minCoeff());
  const double hk = (H * K - K * H).norm();
  if (hk > tol * scale * std::max(1.0, H.norm())) fail(ErrorKind::NotInvariant, "K does not commute with H", hk);

  KDeformedReport r;
  r.H_prime = H * K.inverse();
  const ComplexMatrix lhs = r.H_prime * K * A - A * K * r.H_prime;
  r.bracket_residual = (lhs - (H * A - A * H)).norm();
  const cplx ih(0.0, hbar);
  auto dot = [&](const ComplexMatrix& X) -> ComplexMatrix { return (H * X - X * H) / ih; };
  r.derivation_residual = (dot(A * K * B) - dot(A) * K * B - A * K * dot(B)).norm();
  return r;
}

}  // namespace biham
