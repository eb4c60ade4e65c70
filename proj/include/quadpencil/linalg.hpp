#pragma once

#include <vector>

#include "quadpencil/matrix.hpp"

namespace qp {

// Operator 2-norm (largest singular value).
double spectral_norm(const Matrix& a);

// All singular values, descending.
std::vector<double> singular_values(const Matrix& a);

// Gaussian elimination with partial pivoting. Throws SingularMatrixError
// (carrying the failing pivot index) when a pivot drops below 1e-300.
Matrix inverse(const Matrix& a);

// sigma_max / sigma_min; returns +inf when sigma_min < 1e-300 * sigma_max.
double condition_number(const Matrix& a);

}  // namespace qp
