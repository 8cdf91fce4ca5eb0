#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <vector>

#include "biham/common.hpp"

namespace biham {

// Rank-one projector.
struct PureState {
  ComplexMatrix rho;

  static PureState from_matrix(const ComplexMatrix& rho, double tol = 1e-10);
  static PureState from_vector(const ComplexVector& psi);
  Eigen::Index dim() const { return rho.rows(); }
  // max of |rho - rho^dag|, |Tr rho - 1|, |rho^2 - rho|
  static double defect(const ComplexMatrix& rho);
};

// rho = sum_ij c_i conj(c_j) rho_i rho_0 rho_j / sqrt(Tr(rho_i rho_0 rho_j rho_0))
PureState superpose(const PureState& rho1, const PureState& rho2, const PureState& rho0, cplx c1, cplx c2,
                    double tol = 1e-8);
double transition_probability(const PureState& a, const PureState& b);

// |x><x|, unnormalized
ComplexMatrix momentum_map(const ComplexVector& x);

// sigma_0 = I, then the three Pauli matrices.
const std::array<ComplexMatrix, 4>& pauli();

// A = y0 I + y . sigma on C^2
struct UStarElement {
  double y0 = 0.0;
  Eigen::Vector3d y = Eigen::Vector3d::Zero();
  ComplexMatrix matrix() const;
  static UStarElement from_matrix(const ComplexMatrix& A);
};

// Two-level projector in polar parametrization.
PureState bloch_state(double theta, double phi);

struct BlochTensors {
  Eigen::Vector3d xi;
  Eigen::Matrix4d R;   // Jordan tensor on (y0..y3)
  Eigen::Matrix4d I;   // Poisson tensor on (y0..y3)
  Eigen::Matrix<double, 3, 2> tangent;  // orthonormal basis of the tangent plane
  Eigen::Matrix2d eta;    // in the tangent basis
  Eigen::Matrix2d sigma;
  Eigen::Matrix2d j;      // complex structure on the tangent plane
  Eigen::Matrix3d j_ambient;  // y -> 2 xi x y

  double eta_of(const Eigen::Vector3d& u, const Eigen::Vector3d& v) const { return 2.0 * xi.dot(u.cross(v)); }
  double sigma_of(const Eigen::Vector3d& u, const Eigen::Vector3d& v) const { return u.dot(v); }
  Eigen::Vector3d apply_j(const Eigen::Vector3d& u) const { return j_ambient * u; }
  // I(A,B) and R(A,B) for A = y0 I + y . sigma
  double poisson(const UStarElement& a, const UStarElement& b) const;
  double jordan(const UStarElement& a, const UStarElement& b) const;
};

BlochTensors bloch_geometry(const Eigen::Vector3d& xi, double tol = 1e-10);

// Kahler functions f_A(x) = <x,Ax>/<x,x>; complex for non-Hermitian A.
cplx kahler_function(const ComplexMatrix& A, const ComplexVector& x);
// Gradient in u = (Re x, Im x) at x/|x|, tangent to the sphere.
ComplexVector kahler_gradient(const ComplexMatrix& A, const ComplexVector& x);
// {f,g}_g = 1/2 grad f . grad g + 2 f g (Jordan), {f,g}_w = 1/2 grad f . Lambda grad g
cplx jordan_bracket(const ComplexMatrix& A, const ComplexMatrix& B, const ComplexVector& x);
cplx metric_bracket(const ComplexMatrix& A, const ComplexMatrix& B, const ComplexVector& x);
cplx symplectic_bracket(const ComplexMatrix& A, const ComplexMatrix& B, const ComplexVector& x);
// f_A * f_B = f_A f_B + 1/2 (G + i Omega)(df_A, df_B)
cplx kahler_star(const ComplexMatrix& A, const ComplexMatrix& B, const ComplexVector& x);

struct QuadraticBracketReport {
  double jordan = 0.0;    // |{f_A,f_B}_g - f_{AB+BA}|
  double symplectic = 0.0;  // |{f_A,f_B}_w - f_{(AB-BA)/i}|
  double star = 0.0;      // |f_A * f_B - f_{AB}|
  double max() const { return std::max({jordan, symplectic, star}); }
};

QuadraticBracketReport quadratic_bracket_check(const ComplexMatrix& A, const ComplexMatrix& B,
                                               const std::vector<ComplexVector>& xs);

struct GnsRepresentation {
  ComplexMatrix omega;
  int n = 0;
  int m = 0;              // rank of omega
  ComplexMatrix support;  // n x m, eigenvectors with nonzero weight
  RealVector weights;     // m eigenvalues

  int dimension() const { return n * m; }
  bool irreducible() const { return m == 1; }
  ComplexMatrix pi(const ComplexMatrix& A) const;  // I_m (x) A
  ComplexVector vector_of(const ComplexMatrix& A) const;  // class of A in the quotient
  ComplexVector cyclic_vector() const { return vector_of(ComplexMatrix::Identity(n, n)); }
  // <A|B> = Tr(B omega A^dag) on the matrix-unit basis (n^2 x n^2)
  ComplexMatrix pairing_gram() const;
  bool in_gelfand_ideal(const ComplexMatrix& A, double tol = 1e-12) const;
};

GnsRepresentation gns_construct(const ComplexMatrix& omega, double tol = 1e-10);

struct KDeformedReport {
  double bracket_residual = 0.0;     // |H'KA - AKH' - [H,A]|
  double derivation_residual = 0.0;  // |[H, A K B] - [H,A] K B - A K [H,B]| / (i hbar)
  ComplexMatrix H_prime;
};

KDeformedReport k_deformed_algebra(const ComplexMatrix& K, const ComplexMatrix& H, const ComplexMatrix& A,
                                   const ComplexMatrix& B, double hbar = 1.0, double tol = 1e-10);

struct DeformedFock {
  int N = 0;
  std::vector<double> f;
  ComplexMatrix a, adag, number, A, Adag, Adag2;  // Adag2 = f(n)^{-1} a
  ComplexMatrix commutator;                       // [Adag2, Adag]
  double commutator_residual = 0.0;               // on levels 0..N-2
  double Z1 = 0.0, Z2 = 0.0;
  double partition_residual = 0.0;
};

// Truncation N levels; energies in units of hbar omega.
DeformedFock deformed_fock(const std::function<double(int)>& f, int N, double beta_hbar_omega = 1.0);

}  // namespace biham
