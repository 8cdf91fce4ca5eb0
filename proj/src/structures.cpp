#include "biham/structures.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "biham/spectral.hpp"

namespace biham {

double min_hermitian_eigenvalue(const ComplexMatrix& M) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (M + M.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

static double min_sym_eigenvalue(const RealMatrix& M) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (M + M.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

static double rel(double num, double scale) { return num / std::max(1.0, scale); }

AdmissibleTriple complete_triple(const std::optional<RealMatrix>& g, const std::optional<RealMatrix>& J,
                                 const std::optional<RealMatrix>& omega, double tol) {
  const int given = int(g.has_value()) + int(J.has_value()) + int(omega.has_value());
  if (given < 2) fail(ErrorKind::Domain, "complete_triple needs at least two of g, J, omega");
  Eigen::Index n = g ? g->rows() : J->rows();
  auto check_dim = [&](const std::optional<RealMatrix>& m, const char* name) {
    if (!m) return;
    require_square(*m, name);
    if (m->rows() != n) fail(ErrorKind::Dimension, std::string(name) + " has mismatched dimension");
    if (n % 2) fail(ErrorKind::Dimension, "admissible triples live on even-dimensional spaces");
  };
  check_dim(g, "g");
  check_dim(J, "J");
  check_dim(omega, "omega");
  const RealMatrix I = RealMatrix::Identity(n, n);

  if (g && !is_symmetric(*g, tol)) fail(ErrorKind::NotAdmissible, "g is not symmetric");
  if (omega && !is_skew(*omega, tol)) fail(ErrorKind::NotAdmissible, "omega is not skew-symmetric");
  if (J && rel((*J * *J + I).norm(), J->norm() * J->norm()) > tol)
    fail(ErrorKind::NotAdmissible, "J^2 = -I violated");

  AdmissibleTriple t;
  if (g && J) {
    t.g = *g;
    t.J = *J;
    t.omega = omega ? *omega : RealMatrix(-(*g) * (*J));
  } else if (g && omega) {
    Eigen::FullPivLU<RealMatrix> lu(*g);
    if (!lu.isInvertible()) fail(ErrorKind::NotAdmissible, "g is singular");
    t.g = *g;
    t.omega = *omega;
    t.J = -lu.inverse() * (*omega);
  } else {
    t.J = *J;
    t.omega = *omega;
    t.g = (*omega) * (*J);
  }

  auto& r = t.residuals;
  r.j_squared = rel((t.J * t.J + I).norm(), t.J.norm() * t.J.norm());
  r.omega_skew = rel((t.omega + t.omega.transpose()).norm(), t.omega.norm());
  r.g_symmetry = rel((t.g - t.g.transpose()).norm(), t.g.norm());
  r.compat = rel((t.J.transpose() * t.omega + t.omega * t.J).norm(), t.omega.norm() * t.J.norm());
  r.omega_gj = rel((t.omega + t.g * t.J).norm(), t.omega.norm());
  if (r.j_squared > tol) fail(ErrorKind::NotAdmissible, "J^2 = -I violated", r.j_squared);
  if (r.omega_skew > tol) fail(ErrorKind::NotAdmissible, "omega = -g J is not skew-symmetric", r.omega_skew);
  if (r.g_symmetry > tol) fail(ErrorKind::NotAdmissible, "g is not symmetric", r.g_symmetry);
  if (r.compat > tol)
    fail(ErrorKind::NotAdmissible, "omega(x,Jy) + omega(Jx,y) = 0 (J^T Omega + Omega J = 0) violated", r.compat);
  if (r.omega_gj > tol) fail(ErrorKind::NotAdmissible, "omega = -g o J violated", r.omega_gj);
  t.g = 0.5 * (t.g + t.g.transpose());
  t.omega = 0.5 * (t.omega - t.omega.transpose());
  r.min_eig_g = min_sym_eigenvalue(t.g);
  if (std::abs(r.min_eig_g) <= tol * std::max(1.0, t.g.norm()))
    fail(ErrorKind::NotAdmissible, "g is degenerate");
  t.pseudo_kahler = r.min_eig_g < 0;
  return t;
}

ComplexMatrix AdmissibleTriple::hermitian() const {
  const Eigen::Index n = g.rows() / 2;
  ComplexMatrix h(n, n);
  h.real() = g.topLeftCorner(n, n);
  h.imag() = g.bottomLeftCorner(n, n);
  return h;
}

RealMatrix realify(const ComplexMatrix& A) {
  const Eigen::Index r = A.rows(), c = A.cols();
  RealMatrix R(2 * r, 2 * c);
  R.topLeftCorner(r, c) = A.real();
  R.topRightCorner(r, c) = -A.imag();
  R.bottomLeftCorner(r, c) = A.imag();
  R.bottomRightCorner(r, c) = A.real();
  return R;
}

RealMatrix metric_of(const ComplexMatrix& h) {
  const Eigen::Index n = h.rows();
  RealMatrix g(2 * n, 2 * n);
  g << h.real(), -h.imag(), h.imag(), h.real();
  return g;
}

RealMatrix symplectic_of(const ComplexMatrix& h) {
  const Eigen::Index n = h.rows();
  RealMatrix w(2 * n, 2 * n);
  w << h.imag(), h.real(), -h.real(), h.imag();
  return w;
}

HermitianForm::HermitianForm(ComplexMatrix m) : h(std::move(m)) {
  require_square(h, "h");
  if (!is_hermitian(h, 1e-12)) fail(ErrorKind::NotAHermitianForm, "h is not Hermitian");
  h = 0.5 * (h + h.adjoint());
  if (min_hermitian_eigenvalue(h) <= 0) fail(ErrorKind::NotAHermitianForm, "h is not positive-definite");
}

ConnectingOperator compatibility_analysis(const HermitianForm& h1, const HermitianForm& h2, double tol) {
  if (h1.h.rows() != h2.h.rows()) fail(ErrorKind::Dimension, "Hermitian forms have different dimensions");
  const Eigen::Index n = h1.h.rows();
  ConnectingOperator out;
  out.F = h1.h.inverse() * h2.h;
  out.deff_residual = (out.F.adjoint() * h1.h - h2.h).norm() / std::max(1.0, h2.h.norm());

  const RealMatrix g1 = metric_of(h1.h), g2 = metric_of(h2.h);
  const RealMatrix w1 = symplectic_of(h1.h), w2 = symplectic_of(h2.h);
  out.G_conn = g1.inverse() * g2;
  out.T_conn = w1.inverse() * w2;
  out.commute_residual = (out.G_conn * out.T_conn - out.T_conn * out.G_conn).norm() /
                         std::max(1.0, out.G_conn.norm() * out.T_conn.norm());
  const RealMatrix J1 = -g1.inverse() * w1, J2 = -g2.inverse() * w2;

  Eigen::GeneralizedSelfAdjointEigenSolver<ComplexMatrix> es(h2.h, h1.h);
  if (es.info() != Eigen::Success) fail(ErrorKind::Numerical, "generalized eigen-solver failed");
  const RealVector lam = es.eigenvalues();
  const ComplexMatrix V = es.eigenvectors();
  for (Eigen::Index k = 0; k < n; ++k) {
    CompatBlock b;
    b.lambda = lam(k);
    b.basis.resize(2 * n, 2);
    const ComplexVector v = V.col(k);
    b.basis.col(0) << v.real(), v.imag();
    b.basis.col(1) << -v.imag(), v.real();
    const RealMatrix& B = b.basis;
    const RealMatrix BtB_inv = (B.transpose() * B).inverse();
    const RealMatrix M1 = BtB_inv * B.transpose() * J1 * B;
    const RealMatrix M2 = BtB_inv * B.transpose() * J2 * B;
    b.sign = (M2 - M1).norm() <= (M2 + M1).norm() ? 1 : -1;
    const RealMatrix g1E = B.transpose() * g1 * B, g2E = B.transpose() * g2 * B;
    const RealMatrix w1E = B.transpose() * w1 * B, w2E = B.transpose() * w2 * B;
    b.metric_residual = (g2E - b.lambda * g1E).norm() / std::max(1.0, g2E.norm());
    b.symplectic_residual = (w2E - b.sign * b.lambda * w1E).norm() / std::max(1.0, w2E.norm());
    out.blocks.push_back(std::move(b));
  }
  const auto cl = cluster_values(ComplexVector(lam.cast<cplx>()), 1e-8);
  out.distinct_eigenvalues = static_cast<Eigen::Index>(cl.size()) == n;
  out.commutant_dimension = static_cast<int>(commutant_basis(out.F, 1e-9).size());
  out.generic = out.distinct_eigenvalues && out.commutant_dimension == n;
  (void)tol;
  return out;
}

PencilResult pencil_fields(const LinearVectorField& field, const RealMatrix& T, double tol) {
  const RealMatrix& G = field.G;
  if (T.rows() != G.rows() || T.cols() != G.cols()) fail(ErrorKind::Dimension, "T must match G");
  const double comm = (T * G - G * T).norm();
  if (comm > tol * std::max(1.0, T.norm() * G.norm()))
    fail(ErrorKind::NotASymmetry, "T does not commute with G", comm);
  const Spectrum s = spectral_decompose(T, 1e-8);
  for (const auto& c : s.clusters)
    if (c.size() > 2)
      fail(ErrorKind::NotGeneric, "T has an eigenvalue of multiplicity " + std::to_string(c.size()) +
                                      " (at most 2 allowed on the realified space)");
  if (s.defective) fail(ErrorKind::NotGeneric, "T is not diagonalizable");
  const Eigen::Index n = G.rows() / 2;
  PencilResult out;
  RealMatrix Tk = RealMatrix::Identity(G.rows(), G.cols());
  RealMatrix stack(G.size(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const RealMatrix Gk = Tk * G;
    out.fields.emplace_back(Gk);
    stack.col(k) = Eigen::Map<const RealVector>(Gk.data(), Gk.size());
    Tk = Tk * T;
  }
  for (size_t a = 0; a < out.fields.size(); ++a)
    for (size_t b = a + 1; b < out.fields.size(); ++b) {
      const RealMatrix& A = out.fields[a].G;
      const RealMatrix& B = out.fields[b].G;
      out.max_commutator =
          std::max(out.max_commutator, (A * B - B * A).norm() / std::max(1.0, A.norm() * B.norm()));
    }
  out.rank = numeric_rank(stack, 1e-9);
  out.independent = out.rank == n;
  return out;
}

ComplexMatrix PseudoHermitianResult::deformed_commutator(const ComplexMatrix& A, const ComplexMatrix& B) const {
  return A * eta * B - B * eta * A;
}

PseudoHermitianResult pseudo_hermitian_metric(const ComplexMatrix& H, double tol) {
  require_square(H, "H");
  const Eigen::Index n = H.rows();
  const double hn = std::max(1.0, opnorm(H));
  PseudoHermitianResult out;
  ComplexMatrix V;
  ComplexVector ev;
  if (is_hermitian(H, 1e-14)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (H + H.adjoint()));
    V = es.eigenvectors();
    ev = es.eigenvalues().cast<cplx>();
  } else {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(H, true);
    if (es.info() != Eigen::Success) fail(ErrorKind::Numerical, "eigen-solver did not converge");
    V = es.eigenvectors();
    ev = es.eigenvalues();
  }
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(ev(i).imag()) > tol * hn)
      fail(ErrorKind::NonRealSpectrum, "eigenvalue with imaginary part " + std::to_string(ev(i).imag()),
           std::abs(ev(i).imag()));
  Eigen::JacobiSVD<ComplexMatrix> svd(V);
  const double cond_inv = svd.singularValues()(n - 1) / svd.singularValues()(0);
  if (cond_inv < 1e-10) fail(ErrorKind::NotDiagonalizable, "eigenvectors are linearly dependent", cond_inv);
  const ComplexMatrix Vinv = V.inverse();
  out.psi = V;
  out.phi = Vinv.adjoint();
  out.eigenvalues = ev.real();
  out.eta = out.phi * out.phi.adjoint();
  out.eta = 0.5 * (out.eta + out.eta.adjoint());
  out.biorthonormal_residual = (out.phi.adjoint() * out.psi - ComplexMatrix::Identity(n, n)).norm();
  out.intertwining_residual =
      (H.adjoint() * out.eta - out.eta * H).norm() / std::max(1e-300, opnorm(out.eta) * opnorm(H));
  out.min_eig_eta = min_hermitian_eigenvalue(out.eta);
  return out;
}

MetricCheck check_metric(const ComplexMatrix& H, const ComplexMatrix& eta) {
  MetricCheck m;
  m.hermitian = is_hermitian(eta, 1e-10);
  m.positive = m.hermitian && min_hermitian_eigenvalue(eta) > 0;
  m.intertwining_residual = (H.adjoint() * eta - eta * H).norm() / std::max(1e-300, opnorm(eta) * opnorm(H));
  return m;
}

InvariantVerdict invariant_hermitian_check(const ComplexMatrix& H, const ComplexMatrix& K, double hbar, double tol) {
  require_square(H, "H");
  require_square(K, "K");
  if (H.rows() != K.rows()) fail(ErrorKind::Dimension, "H and K dimensions differ");
  if (!is_hermitian(H, 1e-12)) fail(ErrorKind::Domain, "H must be Hermitian");
  if (!is_hermitian(K, 1e-12) || min_hermitian_eigenvalue(K) <= 0)
    fail(ErrorKind::NotAMetric, "K must be Hermitian positive-definite");
  InvariantVerdict v;
  v.commutator_norm = (H * K - K * H).norm() / std::max(1.0, H.norm() * K.norm());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (H + H.adjoint()));
  const ComplexMatrix& V = es.eigenvectors();
  for (double t : {0.1, 0.37, 1.0, 2.3, 7.9}) {
    ComplexVector ph(H.rows());
    for (Eigen::Index i = 0; i < ph.size(); ++i) ph(i) = std::exp(cplx(0, -t * es.eigenvalues()(i) / hbar));
    const ComplexMatrix U = V * ph.asDiagonal() * V.adjoint();
    v.max_flow_deviation =
        std::max(v.max_flow_deviation, (U.adjoint() * K * U - K).norm() / std::max(1.0, K.norm()));
  }
  v.invariant = v.commutator_norm <= tol;
  return v;
}

}  // namespace biham
