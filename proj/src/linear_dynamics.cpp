#include "biham/linear_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/LU>

namespace biham {

LinearVectorField::LinearVectorField(RealMatrix g) : G(std::move(g)) {
  require_square(G, "G");
  if (G.rows() % 2 != 0) fail(ErrorKind::Dimension, "linear vector field needs even dimension");
}

ConstantSymplectic ConstantSymplectic::from_omega(const RealMatrix& omega) {
  require_square(omega, "Omega");
  if (omega.rows() % 2 != 0) fail(ErrorKind::Dimension, "symplectic matrix needs even dimension");
  if (!is_skew(omega, 1e-12)) fail(ErrorKind::Domain, "Omega must be skew-symmetric (Omega^T = -Omega)");
  Eigen::FullPivLU<RealMatrix> lu(omega);
  if (!lu.isInvertible()) fail(ErrorKind::Singular, "Omega must be invertible");
  ConstantSymplectic s;
  s.Omega = 0.5 * (omega - omega.transpose());
  s.Lambda = lu.inverse();
  s.Lambda = 0.5 * (s.Lambda - s.Lambda.transpose());
  return s;
}

ConstantSymplectic ConstantSymplectic::from_lambda(const RealMatrix& lambda) {
  require_square(lambda, "Lambda");
  if (!is_skew(lambda, 1e-12)) fail(ErrorKind::Domain, "Lambda must be skew-symmetric");
  Eigen::FullPivLU<RealMatrix> lu(lambda);
  if (!lu.isInvertible()) fail(ErrorKind::Singular, "Lambda must be invertible");
  return from_omega(lu.inverse());
}

ConstantSymplectic ConstantSymplectic::standard(int n) {
  RealMatrix w = RealMatrix::Zero(2 * n, 2 * n);
  w.topRightCorner(n, n) = RealMatrix::Identity(n, n);
  w.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return from_omega(w);
}

QuadraticHamiltonian::QuadraticHamiltonian(RealMatrix h) : H(std::move(h)) {
  require_square(H, "H");
  if (!is_symmetric(H, 1e-12)) fail(ErrorKind::Domain, "Hamiltonian matrix must be symmetric");
  H = 0.5 * (H + H.transpose());
}

static int find_partner(const ComplexVector& vals, const std::vector<bool>& used, int i, double eps) {
  int best = -1;
  double bestd = eps;
  for (int j = 0; j < vals.size(); ++j) {
    if (j == i || used[static_cast<size_t>(j)]) continue;
    const double d = std::abs(vals(i) + vals(j));
    if (d <= bestd) {
      bestd = d;
      best = j;
    }
  }
  return best;
}

HamiltonicityVerdict hamiltonicity_test(const LinearVectorField& field, int kmax, const Tolerances& tol) {
  const RealMatrix& G = field.G;
  const Eigen::Index dim = G.rows();
  if (kmax < dim / 2) fail(ErrorKind::Domain, "kmax must be at least n");
  HamiltonicityVerdict v;
  const double gn = std::max(1.0, opnorm(G));
  const RealMatrix G2 = G * G;
  RealMatrix P = G;
  v.trace_ok = true;
  for (int k = 0; k <= kmax; ++k) {
    const double t = P.trace();
    v.odd_traces.push_back(t);
    if (std::abs(t) > tol.trace * std::pow(gn, 2 * k + 1) * static_cast<double>(dim)) v.trace_ok = false;
    P = P * G2;
  }

  v.spectrum = spectral_decompose(G, tol.cluster);
  const ComplexVector& ev = v.spectrum.eigenvalues;
  double scale = 1.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) scale = std::max(scale, std::abs(ev(i)));
  const double eps = tol.rank * scale;

  std::vector<bool> used(static_cast<size_t>(ev.size()), false);
  v.eigen_pairing_ok = true;
  for (int i = 0; i < ev.size(); ++i) {
    if (used[static_cast<size_t>(i)]) continue;
    const int j = find_partner(ev, used, i, eps);
    if (j < 0) {
      v.eigen_pairing_ok = false;
      break;
    }
    used[static_cast<size_t>(i)] = used[static_cast<size_t>(j)] = true;
  }

  // Jordan structure: compare rank sequences at lambda and -lambda.
  v.jordan_ok = true;
  const ComplexMatrix Gc = G.cast<cplx>();
  const auto clusters = cluster_values(ev, tol.rank);
  auto cluster_mean = [&](const std::vector<int>& c) {
    cplx s{};
    for (int i : c) s += ev(i);
    return s / static_cast<double>(c.size());
  };
  for (const auto& c : clusters) {
    const cplx lam = cluster_mean(c);
    const int m = static_cast<int>(c.size());
    if (std::abs(lam) <= eps) {
      if (m % 2 != 0) v.jordan_ok = false;
      continue;
    }
    int partner_size = 0;
    for (const auto& d : clusters)
      if (std::abs(cluster_mean(d) + lam) <= eps) partner_size = static_cast<int>(d.size());
    if (partner_size != m) {
      v.jordan_ok = false;
      continue;
    }
    if (m > 1 && rank_sequence(Gc, lam, m, tol.rank) != rank_sequence(Gc, -lam, m, tol.rank))
      v.jordan_ok = false;
  }
  return v;
}

QuadraticHamiltonian factorize(const LinearVectorField& field, const ConstantSymplectic& omega,
                               const Tolerances& tol) {
  if (field.G.rows() != omega.Omega.rows()) fail(ErrorKind::Dimension, "G and Omega dimensions differ");
  const RealMatrix S = omega.Omega * field.G;
  const double asym = (S - S.transpose()).norm();
  const double scale = std::max(1.0, omega.Omega.norm() * field.G.norm());
  if (asym > tol.symmetry * scale)
    fail(ErrorKind::NotHamiltonianForThisStructure,
         "Omega*G is not symmetric (asymmetry norm " + std::to_string(asym) + ")", asym);
  return QuadraticHamiltonian(-0.5 * (S + S.transpose()));
}

RealMatrix quadratic_bracket_form(const RealMatrix& A, const RealMatrix& B, const RealMatrix& Lambda) {
  return 0.5 * (A * Lambda * B - B * Lambda * A);
}

double involution_residual(const RealMatrix& A, const RealMatrix& B, const RealMatrix& Lambda) {
  const RealMatrix F = A * Lambda * B;
  // A Lambda B - B Lambda A = F + F^T, so only the symmetric part of F matters.
  const double num = (F + F.transpose()).norm() * 0.5;
  const double den = std::max(1e-300, A.norm() * B.norm() * std::max(1.0, Lambda.norm()));
  return num / den;
}

double HamiltonianHierarchy::max_involution() const {
  double m = 0.0;
  for (const auto& p : pairs) m = std::max(m, p.involution);
  return m;
}

double HamiltonianHierarchy::max_commutator() const {
  double m = 0.0;
  for (const auto& p : pairs) m = std::max(m, p.commutator);
  return m;
}

HamiltonianHierarchy hierarchy(const LinearVectorField& field, const ConstantSymplectic& omega, int kmax,
                               const Tolerances& tol) {
  if (kmax < 0) fail(ErrorKind::Domain, "kmax must be nonnegative");
  const QuadraticHamiltonian H0 = factorize(field, omega, tol);
  const RealMatrix& G = field.G;
  HamiltonianHierarchy out;
  RealMatrix Gk = RealMatrix::Identity(G.rows(), G.cols());  // G^k
  const RealMatrix G2 = G * G;
  RealMatrix Godd = G;  // G^{2k+1}
  for (int k = 0; k <= kmax; ++k) {
    RealMatrix Hk = Gk.transpose() * H0.H * Gk;
    if (k % 2) Hk = -Hk;
    Hk = 0.5 * (Hk + Hk.transpose());
    out.entries.push_back({LinearVectorField(Godd), QuadraticHamiltonian(Hk)});
    Gk = Gk * G;
    Godd = Godd * G2;
  }
  for (int k = 0; k <= kmax; ++k)
    for (int l = k + 1; l <= kmax; ++l) {
      const auto& a = out.entries[static_cast<size_t>(k)];
      const auto& b = out.entries[static_cast<size_t>(l)];
      const double inv = involution_residual(a.H.H, b.H.H, omega.Lambda);
      const RealMatrix C = a.gamma.G * b.gamma.G - b.gamma.G * a.gamma.G;
      const double com = C.norm() / std::max(1e-300, a.gamma.G.norm() * b.gamma.G.norm());
      out.pairs.push_back({k, l, inv, com});
    }
  return out;
}

CommutantDeformation commutant_deformation(const LinearVectorField& field, const ConstantSymplectic& omega,
                                           const RealMatrix& T, const Tolerances& tol) {
  const RealMatrix& G = field.G;
  if (T.rows() != G.rows() || T.cols() != G.cols()) fail(ErrorKind::Dimension, "T must match G");
  const double comm = (T * G - G * T).norm();
  if (comm > tol.symmetry * std::max(1.0, T.norm() * G.norm()))
    fail(ErrorKind::NotASymmetry, "T does not commute with G (|[T,G]| = " + std::to_string(comm) + ")", comm);
  Eigen::FullPivLU<RealMatrix> lu(T);
  if (!lu.isInvertible()) fail(ErrorKind::Singular, "T is singular");
  const QuadraticHamiltonian H = factorize(field, omega, tol);
  const RealMatrix Ti = lu.inverse();
  CommutantDeformation d{RealMatrix(), RealMatrix(), QuadraticHamiltonian(T.transpose() * H.H * T), false, 0.0};
  d.Lambda = Ti * omega.Lambda * Ti.transpose();
  d.Lambda = 0.5 * (d.Lambda - d.Lambda.transpose());
  d.Omega = T.transpose() * omega.Omega * T;
  d.Omega = 0.5 * (d.Omega - d.Omega.transpose());
  d.is_canonical = (d.Omega - omega.Omega).norm() <= tol.symmetry * std::max(1.0, omega.Omega.norm());
  d.reproduction_residual = (G + d.Lambda * d.H.H).norm() / std::max(1.0, G.norm());
  return d;
}

LieDeformed lie_deformed_structure(const ConstantSymplectic& omega, const QuadraticHamiltonian& H,
                                   const Tolerances& tol, unsigned seed) {
  const RealMatrix& L = omega.Lambda;
  if (H.H.rows() != L.rows()) fail(ErrorKind::Dimension, "H and Lambda dimensions differ");
  const RealMatrix G = -L * H.H;
  Eigen::FullPivLU<RealMatrix> lu(G);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible())
    fail(ErrorKind::SingularDynamics, "G = -Lambda H is singular; the exponentiated construction is not implemented");
  const RealMatrix LHL = L * H.H * L;
  RealMatrix L2 = LHL * H.H * L;
  L2 = 0.5 * (L2 - L2.transpose());
  Eigen::FullPivLU<RealMatrix> lu2(LHL);
  RealMatrix H2 = lu2.inverse();
  H2 = 0.5 * (H2 + H2.transpose());
  LieDeformed out{L2, QuadraticHamiltonian(H2), 0.0, 0.0, 0.0};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  for (int s = 0; s < 8; ++s) {
    RealVector x(G.rows());
    for (auto& v : x) v = nd(rng);
    const RealVector lhs = -L2 * (H2 * x);
    out.reproduction_residual =
        std::max(out.reproduction_residual, (lhs - G * x).norm() / std::max(1.0, (G * x).norm()));
  }
  out.involution_lambda = involution_residual(H.H, H2, L);
  out.involution_lambda2 = involution_residual(H.H, H2, L2);
  (void)tol;
  return out;
}

}  // namespace biham
