#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biham/common.hpp"
#include "biham/linear_dynamics.hpp"

namespace biham {

struct AdmissibleTriple {
  RealMatrix g;
  RealMatrix J;
  RealMatrix omega;
  bool pseudo_kahler = false;  // g symmetric but not positive-definite
  struct Residuals {
    double j_squared = 0.0;      // |J^2 + I|
    double compat = 0.0;         // |J^T Omega + Omega J|
    double omega_gj = 0.0;       // |Omega + g J|
    double g_symmetry = 0.0;
    double omega_skew = 0.0;
    double min_eig_g = 0.0;
  } residuals;

  // Hermitian structure h = g + i omega on C^n, using (Re, Im) coordinates.
  ComplexMatrix hermitian() const;
};

// Completes a triple from any two of (g, J, omega) via Omega = -g J,
// J = -g^{-1} Omega, g = Omega J. Throws NotAdmissible naming the failed identity.
AdmissibleTriple complete_triple(const std::optional<RealMatrix>& g, const std::optional<RealMatrix>& J,
                                 const std::optional<RealMatrix>& omega, double tol = 1e-10);

// [[alpha, -beta], [beta, alpha]] for A = alpha + i beta.
RealMatrix realify(const ComplexMatrix& A);

// Real tensors of a Hermitian form h on C^n in (Re x, Im x) coordinates:
// g(u,v) = Re(x^dagger h y), omega(u,v) = Im(x^dagger h y).
RealMatrix metric_of(const ComplexMatrix& h);
RealMatrix symplectic_of(const ComplexMatrix& h);

struct HermitianForm {
  ComplexMatrix h;
  explicit HermitianForm(ComplexMatrix m);
};

struct CompatBlock {
  double lambda;
  int sign;              // J2|E = sign * J1|E
  RealMatrix basis;      // 2n x 2 real basis of E_k
  double metric_residual;   // |g2|E - lambda g1|E|
  double symplectic_residual;  // |omega2|E - sign lambda omega1|E|
};

struct ConnectingOperator {
  ComplexMatrix F;
  RealMatrix G_conn;  // g1^{-1} g2
  RealMatrix T_conn;  // omega1^{-1} omega2
  std::vector<CompatBlock> blocks;
  bool generic = false;
  bool distinct_eigenvalues = false;
  int commutant_dimension = 0;
  double deff_residual = 0.0;     // |h2 - h1 F| relative
  double commute_residual = 0.0;  // |[G_conn, T_conn]| relative
};

ConnectingOperator compatibility_analysis(const HermitianForm& h1, const HermitianForm& h2, double tol = 1e-9);

struct PencilResult {
  std::vector<LinearVectorField> fields;
  double max_commutator = 0.0;
  int rank = 0;
  bool independent = false;
};

// Gamma_{k+1} = T^k G for k = 0..n-1. Throws NotASymmetry / NotGeneric.
PencilResult pencil_fields(const LinearVectorField& field, const RealMatrix& T, double tol = 1e-9);

struct PseudoHermitianResult {
  ComplexMatrix eta;
  ComplexMatrix psi;  // right eigenvectors (columns)
  ComplexMatrix phi;  // dual basis, <phi_m|psi_n> = delta_mn
  RealVector eigenvalues;
  double biorthonormal_residual = 0.0;
  double intertwining_residual = 0.0;  // |H^dagger eta - eta H| / (|eta||H|)
  double min_eig_eta = 0.0;

  // [A, B]_eta = A eta B - B eta A.
  ComplexMatrix deformed_commutator(const ComplexMatrix& A, const ComplexMatrix& B) const;
};

PseudoHermitianResult pseudo_hermitian_metric(const ComplexMatrix& H, double tol = 1e-9);

struct MetricCheck {
  bool hermitian = false;
  bool positive = false;
  double intertwining_residual = 0.0;
  bool valid(double tol = 1e-9) const { return hermitian && positive && intertwining_residual <= tol; }
};
// Checks that eta is a positive metric with H^dagger eta = eta H.
MetricCheck check_metric(const ComplexMatrix& H, const ComplexMatrix& eta);

struct InvariantVerdict {
  bool invariant = false;
  double commutator_norm = 0.0;
  double max_flow_deviation = 0.0;  // max_t |U(t)^dagger K U(t) - K|
};

InvariantVerdict invariant_hermitian_check(const ComplexMatrix& H, const ComplexMatrix& K, double hbar = 1.0,
                                           double tol = 1e-10);

// Hermitian positive-definite test via the smallest eigenvalue.
double min_hermitian_eigenvalue(const ComplexMatrix& M);

}  // namespace biham
