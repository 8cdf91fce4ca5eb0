#pragma once

#include <vector>

#include "biham/common.hpp"
#include "biham/spectral.hpp"

namespace biham {

struct LinearVectorField {
  RealMatrix G;
  explicit LinearVectorField(RealMatrix g);
  Eigen::Index dim() const { return G.rows(); }
};

struct ConstantSymplectic {
  RealMatrix Omega;
  RealMatrix Lambda;
  // Validates skew-symmetry and invertibility; Lambda = Omega^{-1}.
  static ConstantSymplectic from_omega(const RealMatrix& omega);
  static ConstantSymplectic from_lambda(const RealMatrix& lambda);
  // Darboux form [[0, I], [-I, 0]] on R^{2n}.
  static ConstantSymplectic standard(int n);
};

struct QuadraticHamiltonian {
  RealMatrix H;  // value 1/2 x^T H x
  explicit QuadraticHamiltonian(RealMatrix h);
  double value(const RealVector& x) const { return 0.5 * x.dot(H * x); }
};

struct HamiltonicityVerdict {
  bool trace_ok = false;
  bool eigen_pairing_ok = false;
  bool jordan_ok = false;
  std::vector<double> odd_traces;  // Tr G^{2k+1}, k = 0..kmax
  Spectrum spectrum;
  bool hamiltonian() const { return trace_ok && eigen_pairing_ok && jordan_ok; }
};

struct Tolerances {
  double trace = 1e-10;
  double cluster = 1e-8;
  double symmetry = 1e-10;
  double involution = 1e-10;
  double rank = 1e-6;
};

HamiltonicityVerdict hamiltonicity_test(const LinearVectorField& field, int kmax, const Tolerances& tol = {});

// H = -Omega G; throws NotHamiltonianForThisStructure (residual = asymmetry norm).
QuadraticHamiltonian factorize(const LinearVectorField& field, const ConstantSymplectic& omega,
                               const Tolerances& tol = {});

struct HierarchyEntry {
  LinearVectorField gamma;
  QuadraticHamiltonian H;
};

struct HamiltonianHierarchy {
  std::vector<HierarchyEntry> entries;
  // (k, l, residual) for k < l: relative norm of the bracket form and of [G_k, G_l].
  struct Pair {
    int k, l;
    double involution;
    double commutator;
  };
  std::vector<Pair> pairs;
  double max_involution() const;
  double max_commutator() const;
};

HamiltonianHierarchy hierarchy(const LinearVectorField& field, const ConstantSymplectic& omega, int kmax,
                               const Tolerances& tol = {});

// Matrix of the quadratic form of {1/2 x^T A x, 1/2 x^T B x} under Lambda:
// {f_A, f_B} = 1/2 x^T (A Lambda B - B Lambda A) x.
RealMatrix quadratic_bracket_form(const RealMatrix& A, const RealMatrix& B, const RealMatrix& Lambda);
double involution_residual(const RealMatrix& A, const RealMatrix& B, const RealMatrix& Lambda);

struct CommutantDeformation {
  RealMatrix Lambda;  // T^{-1} Lambda T^{-T}
  RealMatrix Omega;
  QuadraticHamiltonian H;  // T^T H T
  bool is_canonical = false;
  double reproduction_residual = 0.0;  // |G + Lambda' H'| / |G|
};

CommutantDeformation commutant_deformation(const LinearVectorField& field, const ConstantSymplectic& omega,
                                           const RealMatrix& T, const Tolerances& tol = {});

struct LieDeformed {
  RealMatrix Lambda2;
  QuadraticHamiltonian H2;
  double reproduction_residual = 0.0;  // sampled |Lambda2 grad H2 + G x| relative
  double involution_lambda = 0.0;      // {H, H2} under Lambda
  double involution_lambda2 = 0.0;     // {H, H2} under Lambda2
};

LieDeformed lie_deformed_structure(const ConstantSymplectic& omega, const QuadraticHamiltonian& H,
                                   const Tolerances& tol = {}, unsigned seed = 0);

}  // namespace biham
