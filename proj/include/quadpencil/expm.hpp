#pragma once

#include "quadpencil/matrix.hpp"

namespace qp {

// e^A by scaling-and-squaring with diagonal Pade approximants.
// Refuses (OverflowRiskError) when ||A||_2 > 1e8.
Matrix matrix_exp(const Matrix& a);

}  // namespace qp
