#pragma once

#include <vector>

#include "biham/common.hpp"

namespace biham {

struct ModelConstants {
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;
  double beta = 1.0;

  // Throws DomainError unless every constant is strictly positive.
  void validate() const;
};

struct JordanChain {
  cplx eigenvalue;
  // Columns v_1..v_k with (M - lambda) v_1 = 0, (M - lambda) v_{j+1} = v_j.
  ComplexMatrix vectors;
};

struct Spectrum {
  ComplexVector eigenvalues;
  ComplexMatrix eigenvectors;
  double cluster_tol = 1e-8;
  // Index lists into eigenvalues; together they partition 0..n-1.
  std::vector<std::vector<int>> clusters;
  bool defective = false;
  // Only filled for clusters whose geometric multiplicity is short.
  std::vector<JordanChain> chains;
  double max_residual = 0.0;

  cplx cluster_value(size_t c) const;
};

Spectrum spectral_decompose(const ComplexMatrix& M, double cluster_tol = 1e-8);
Spectrum spectral_decompose(const RealMatrix& M, double cluster_tol = 1e-8);

// Group eigenvalues whose distance is within tol * max(1, max |lambda|).
std::vector<std::vector<int>> cluster_values(const ComplexVector& vals, double tol);

// Numerical rank: singular values above rel_tol * max(1, sigma_max).
int numeric_rank(const ComplexMatrix& M, double rel_tol = 1e-10);
int numeric_rank(const RealMatrix& M, double rel_tol = 1e-10);

// Orthonormal basis (columns) of the numerical kernel.
ComplexMatrix nullspace(const ComplexMatrix& M, double rel_tol = 1e-10);
RealMatrix nullspace(const RealMatrix& M, double rel_tol = 1e-10);

// Basis of {T : G T - T G = 0} from the vectorized homogeneous system.
std::vector<RealMatrix> commutant_basis(const RealMatrix& G, double rel_tol = 1e-10);
std::vector<ComplexMatrix> commutant_basis(const ComplexMatrix& G, double rel_tol = 1e-10);

// Basis of the common commutant of a family of matrices.
std::vector<ComplexMatrix> joint_commutant_basis(const std::vector<ComplexMatrix>& family,
                                                 double rel_tol = 1e-10);

// rank((M - lambda I)^j) for j = 1..jmax.
std::vector<int> rank_sequence(const ComplexMatrix& M, cplx lambda, int jmax, double rel_tol);

bool is_symmetric(const RealMatrix& M, double rel_tol);
bool is_skew(const RealMatrix& M, double rel_tol);
bool is_hermitian(const ComplexMatrix& M, double rel_tol);

}  // namespace biham
