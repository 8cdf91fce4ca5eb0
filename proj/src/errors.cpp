#include "biham/common.hpp"

#include <Eigen/SVD>

namespace biham {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Dimension: return "DimensionError";
    case ErrorKind::Numerical: return "NumericalError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Singular: return "SingularityError";
    case ErrorKind::NotHamiltonianForThisStructure: return "NotHamiltonianForThisStructure";
    case ErrorKind::NotASymmetry: return "NotASymmetry";
    case ErrorKind::SingularDynamics: return "SingularDynamics";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::NotAHermitianForm: return "NotAHermitianForm";
    case ErrorKind::NotGeneric: return "NotGeneric";
    case ErrorKind::NonRealSpectrum: return "NonRealSpectrum";
    case ErrorKind::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorKind::RootFinding: return "RootFindingError";
    case ErrorKind::Inconsistency: return "InconsistencyError";
    case ErrorKind::DegenerateFiducial: return "DegenerateFiducial";
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotAMetric: return "NotAMetric";
    case ErrorKind::Grid: return "GridError";
    case ErrorKind::Deformation: return "DeformationError";
    case ErrorKind::Spec: return "SpecError";
  }
  return "Error";
}

double opnorm(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  return svd.singularValues()(0);
}

double opnorm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace biham
