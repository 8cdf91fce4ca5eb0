#include "biham/matrix_io.hpp"

namespace biham {

using nlohmann::json;

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(ErrorKind::Spec, "expected a number or a [re, im] pair, got " + j.dump());
}

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const RealMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

json to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json to_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

ComplexMatrix complex_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    fail(ErrorKind::Spec, "matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      fail(ErrorKind::Spec, "ragged matrix: row " + std::to_string(i));
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<size_t>(k)]);
  }
  return m;
}

RealMatrix real_matrix_from_json(const json& j) {
  ComplexMatrix c = complex_matrix_from_json(j);
  if (c.imag().cwiseAbs().maxCoeff() > 0.0) fail(ErrorKind::Spec, "expected a real matrix");
  return c.real();
}

ComplexVector complex_vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::Spec, "vector must be a non-empty array");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

RealVector real_vector_from_json(const json& j) {
  ComplexVector c = complex_vector_from_json(j);
  if (c.imag().cwiseAbs().maxCoeff() > 0.0) fail(ErrorKind::Spec, "expected a real vector");
  return c.real();
}

}  // namespace biham
