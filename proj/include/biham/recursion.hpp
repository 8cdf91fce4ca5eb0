#pragma once

#include <functional>
#include <vector>

#include "biham/common.hpp"
#include "biham/linear_dynamics.hpp"
#include "biham/poly.hpp"

namespace biham {

// (1,1) tensor with polynomial components T^i_j(x^1..x^n).
struct TensorField11 {
  int n = 0;
  std::vector<PhasePolynomial> comps;  // row-major, comps[i*n + j] = T^i_j

  static TensorField11 constant(const RealMatrix& T);
  static TensorField11 from_components(int n, std::vector<PhasePolynomial> comps);
  const PhasePolynomial& at(int i, int j) const { return comps[static_cast<size_t>(i * n + j)]; }
  PhasePolynomial& at(int i, int j) { return comps[static_cast<size_t>(i * n + j)]; }
  bool is_constant() const;
  RealMatrix evaluate(const std::vector<double>& x) const;
};

// Components N^i_km as polynomials, index (i*n + k)*n + m.
struct TorsionTensor {
  int n = 0;
  std::vector<PhasePolynomial> comps;
  const PhasePolynomial& at(int i, int k, int m) const { return comps[static_cast<size_t>((i * n + k) * n + m)]; }
  std::vector<double> evaluate(const std::vector<double>& x) const;
  bool is_zero() const;
};

// N^i_km = d_j T^i_k T^j_m + T^i_j d_k T^j_m - (k <-> m).
TorsionTensor nijenhuis_torsion(const TensorField11& T);
std::vector<double> nijenhuis_torsion(const TensorField11& T, const std::vector<double>& x);

// Lie derivative of T along the linear field Gamma = C^i_j x^j d_i.
TensorField11 lie_derivative_linear(const RealMatrix& C, const TensorField11& T);

struct RecursionOperator {
  RealMatrix T;
  bool torsion_free = true;   // constant T
  bool compatible = false;    // T^T omega1 = omega1 T
  bool closed = true;         // constant forms
  double compat_residual = 0.0;
  int kernel_dimension = 0;
  bool strong() const { return torsion_free && compatible && closed; }
};

RecursionOperator recursion_from_pair(const RealMatrix& omega1, const RealMatrix& omega2, double tol = 1e-10);

struct InvariantChain {
  std::vector<QuadraticHamiltonian> H;  // H_0..H_kmax
  double max_antisymmetric = 0.0;       // skew part of (T^T)^k H, relative
  double max_involution = 0.0;
  bool exact = true;                    // T^T dH is closed (T^T H symmetric)
  int independent = 0;                  // rank of {vec H_k}
  int stops_at = -1;                    // first k whose H_k adds no new direction, -1 if none
};

// H_k = sym((T^T)^k H); throws Inconsistency if any pair fails involution.
InvariantChain invariant_chain(const RealMatrix& T, const RealMatrix& omega, const QuadraticHamiltonian& H, int kmax,
                               double tol = 1e-10);

// Linear map on a matrix algebra M_n(C).
struct AlgebraEndomorphism {
  int n = 0;
  std::function<ComplexMatrix(const ComplexMatrix&)> apply;

  static AlgebraEndomorphism left_multiplication(const ComplexMatrix& K);
  static AlgebraEndomorphism inner_derivation(const ComplexMatrix& X);
  // L acts on column-major vec(A), size n^2 x n^2.
  static AlgebraEndomorphism from_matrix(const ComplexMatrix& L);
  ComplexMatrix operator()(const ComplexMatrix& a) const { return apply(a); }
};

// a *_T b = T(a) b + a T(b) - T(ab)
ComplexMatrix hochschild_star(const AlgebraEndomorphism& T, const ComplexMatrix& a, const ComplexMatrix& b);
// max over matrix-unit pairs of |E_ij *_T E_kl|
double derivation_defect(const AlgebraEndomorphism& T);
bool derivation_test(const AlgebraEndomorphism& T, double tol = 1e-12);
// N_T(a, b) = T(a *_T b) - T(a) T(b)
ComplexMatrix algebra_torsion(const AlgebraEndomorphism& T, const ComplexMatrix& a, const ComplexMatrix& b);

// Bivector with polynomial components, Lambda^{ij} = -Lambda^{ji}.
struct PolyBivector {
  int n = 0;
  std::vector<PhasePolynomial> comps;  // comps[i*n + j]

  static PolyBivector zero(int n);
  static PolyBivector constant(const RealMatrix& L);
  const PhasePolynomial& at(int i, int j) const { return comps[static_cast<size_t>(i * n + j)]; }
  PhasePolynomial& at(int i, int j) { return comps[static_cast<size_t>(i * n + j)]; }
  PolyBivector scaled(const PhasePolynomial& k) const;
  bool is_antisymmetric() const;
  // Lambda(df, dg) = Lambda^{ij} d_i f d_j g
  PhasePolynomial bracket(const PhasePolynomial& f, const PhasePolynomial& g) const;
};

// Totally antisymmetric (3,0) components, index (i*n + j)*n + k.
struct PolyTrivector {
  int n = 0;
  std::vector<PhasePolynomial> comps;
  const PhasePolynomial& at(int i, int j, int k) const { return comps[static_cast<size_t>((i * n + j) * n + k)]; }
  PhasePolynomial& at(int i, int j, int k) { return comps[static_cast<size_t>((i * n + j) * n + k)]; }
  bool is_zero() const;
};

// [A,B]^{ijk} = cyclic_{ijk} sum_l (A^{il} d_l B^{jk} + B^{il} d_l A^{jk}).
PolyTrivector schouten_bracket(const PolyBivector& A, const PolyBivector& B);

// Hamiltonian field X_k = {k, .} = Lambda^{ab} d_a k d_b, as components X^b.
std::vector<PhasePolynomial> hamiltonian_field(const PolyBivector& L, const PhasePolynomial& k);
// (X ^ P)^{ijk} = X^i P^{jk} + X^j P^{ki} + X^k P^{ij}
PolyTrivector wedge(const std::vector<PhasePolynomial>& X, const PolyBivector& P);
double trivector_distance(const PolyTrivector& a, const PolyTrivector& b);

}  // namespace biham
