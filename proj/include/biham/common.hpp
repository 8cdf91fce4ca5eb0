#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace biham {

using cplx = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

enum class ErrorKind {
  Dimension,
  Numerical,
  Domain,
  Singular,
  NotHamiltonianForThisStructure,
  NotASymmetry,
  SingularDynamics,
  NotAdmissible,
  NotAHermitianForm,
  NotGeneric,
  NonRealSpectrum,
  NotDiagonalizable,
  RootFinding,
  Inconsistency,
  DegenerateFiducial,
  NotAState,
  NotInvariant,
  NotAMetric,
  Grid,
  Deformation,
  Spec,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double residual = 0.0)
      : std::runtime_error(what), kind_(kind), residual_(residual) {}
  ErrorKind kind() const { return kind_; }
  // Offending norm when the failure is quantitative (0 otherwise).
  double residual() const { return residual_; }

 private:
  ErrorKind kind_;
  double residual_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg, double residual = 0.0) {
  throw Error(k, std::string(error_kind_name(k)) + ": " + msg, residual);
}

inline void require_square(const RealMatrix& m, const char* name) {
  if (m.rows() != m.cols() || m.rows() == 0)
    fail(ErrorKind::Dimension, std::string(name) + " must be square and non-empty");
}
inline void require_square(const ComplexMatrix& m, const char* name) {
  if (m.rows() != m.cols() || m.rows() == 0)
    fail(ErrorKind::Dimension, std::string(name) + " must be square and non-empty");
}

// Operator 2-norm (largest singular value); 0 for empty matrices.
double opnorm(const RealMatrix& m);
double opnorm(const ComplexMatrix& m);

}  // namespace biham
