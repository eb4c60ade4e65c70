#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "quadpencil/matrix.hpp"

namespace qp {

enum class Structure { general, hermitian, gyroscopic };

Structure structure_from_string(const std::string& s);
std::string structure_to_string(Structure s);

// L(lambda) = lambda^2 1 + lambda B + C. The structure tag is declared by
// the caller and verified on construction:
//   hermitian:  B = B^H, C = C^H (within 1e-12 relative)
//   gyroscopic: B real skew-symmetric, C real symmetric
class QuadraticPencil {
public:
    QuadraticPencil(Matrix b, Matrix c, Structure structure = Structure::general);

    Eigen::Index n() const { return b_.rows(); }
    const Matrix& B() const { return b_; }
    const Matrix& C() const { return c_; }
    Structure structure() const { return structure_; }

    Matrix evaluate(Complex lambda) const;

    // (lambda^2 1 + lambda B + C)^-1. Throws SpectrumPointError when the
    // evaluation is numerically singular
    // (sigma_min < 1e-12 * max(1, |lambda|^2, ||B||, ||C||)).
    Matrix resolvent(Complex lambda) const;

    // 2n x 2n block matrix [[0, 1], [-C, -B]].
    Matrix companion_matrix() const;

    nlohmann::json to_json() const;
    static QuadraticPencil from_json(const nlohmann::json& j);

private:
    Matrix b_, c_;
    Structure structure_;
};

// Defect of the identity L(lambda)^-1 = top-right n x n block of
// (lambda 1 - C_1)^-1; test support.
double check_companion_resolvent_identity(const QuadraticPencil& p, Complex lambda);

}  // namespace qp
