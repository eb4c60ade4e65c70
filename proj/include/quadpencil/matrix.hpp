#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace qp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

bool is_finite(const Matrix& a);

// Throws InvalidInputError when `a` contains NaN or Inf.
void require_finite(const Matrix& a, const std::string& what);

// Canonical wire format: {"rows": r, "cols": c, "data": [[re, im], ...]}
// row-major. Round-trips finite doubles bit-exactly.
nlohmann::json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

}  // namespace qp
