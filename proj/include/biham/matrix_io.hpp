#pragma once

#include <json.hpp>

#include "biham/common.hpp"

namespace biham {

// Nested row arrays of [re, im] pairs. Plain numbers are accepted on input.
nlohmann::json to_json(const ComplexMatrix& m);
nlohmann::json to_json(const RealMatrix& m);
nlohmann::json to_json(const ComplexVector& v);
nlohmann::json to_json(const RealVector& v);

ComplexMatrix complex_matrix_from_json(const nlohmann::json& j);
// Rejects entries with a nonzero imaginary part.
RealMatrix real_matrix_from_json(const nlohmann::json& j);
ComplexVector complex_vector_from_json(const nlohmann::json& j);
RealVector real_vector_from_json(const nlohmann::json& j);

cplx complex_from_json(const nlohmann::json& j);
nlohmann::json to_json(cplx z);

}  // namespace biham
