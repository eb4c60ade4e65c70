#include "quadpencil/pencil.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "quadpencil/error.hpp"
#include "quadpencil/linalg.hpp"

namespace qp {

Structure structure_from_string(const std::string& s) {
    if (s == "general") return Structure::general;
    if (s == "hermitian") return Structure::hermitian;
    if (s == "gyroscopic") return Structure::gyroscopic;
    throw InvalidInputError("unknown pencil structure: " + s);
}

std::string structure_to_string(Structure s) {
    switch (s) {
        case Structure::general: return "general";
        case Structure::hermitian: return "hermitian";
        case Structure::gyroscopic: return "gyroscopic";
    }
    return "general";
}

namespace {

bool is_real(const Matrix& a, double tol) {
    double im = 0.0, scale = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            im = std::max(im, std::abs(a(i, j).imag()));
            scale = std::max(scale, std::abs(a(i, j)));
        }
    return im <= tol * std::max(scale, 1.0);
}

}  // namespace

QuadraticPencil::QuadraticPencil(Matrix b, Matrix c, Structure structure)
    : b_(std::move(b)), c_(std::move(c)), structure_(structure) {
    if (b_.rows() != b_.cols() || c_.rows() != c_.cols() || b_.rows() != c_.rows())
        throw InvalidInputError("pencil: B and C must be square of equal size");
    require_finite(b_, "pencil B");
    require_finite(c_, "pencil C");
    const double nb = std::max(spectral_norm(b_), 1e-300);
    const double nc = std::max(spectral_norm(c_), 1e-300);
    if (structure_ == Structure::hermitian) {
        if (spectral_norm(b_ - b_.adjoint()) > 1e-12 * nb ||
            spectral_norm(c_ - c_.adjoint()) > 1e-12 * nc)
            throw InvalidInputError("pencil: declared hermitian but B or C is not");
    } else if (structure_ == Structure::gyroscopic) {
        if (!is_real(b_, 1e-12) || !is_real(c_, 1e-12))
            throw InvalidInputError("pencil: declared gyroscopic but B or C not real");
        if (spectral_norm(b_ + b_.transpose()) > 1e-12 * nb ||
            spectral_norm(c_ - c_.transpose()) > 1e-12 * nc)
            throw InvalidInputError(
                "pencil: declared gyroscopic but B not skew or C not symmetric");
    }
}

Matrix QuadraticPencil::evaluate(Complex lambda) const {
    if (lambda == Complex(0, 0)) return c_;  // exact
    return lambda * lambda * Matrix::Identity(n(), n()) + lambda * b_ + c_;
}

Matrix QuadraticPencil::resolvent(Complex lambda) const {
    const Matrix l = evaluate(lambda);
    const auto sv = singular_values(l);
    const double cutoff = 1e-12 * std::max({1.0, std::norm(lambda),
                                            spectral_norm(b_), spectral_norm(c_)});
    if (sv.back() < cutoff)
        throw SpectrumPointError("resolvent: lambda numerically on the spectrum",
                                 lambda);
    return inverse(l);
}

Matrix QuadraticPencil::companion_matrix() const {
    const Eigen::Index m = n();
    Matrix c1 = Matrix::Zero(2 * m, 2 * m);
    c1.block(0, m, m, m) = Matrix::Identity(m, m);
    c1.block(m, 0, m, m) = -c_;
    c1.block(m, m, m, m) = -b_;
    return c1;
}

nlohmann::json QuadraticPencil::to_json() const {
    nlohmann::json j;
    j["n"] = n();
    j["structure"] = structure_to_string(structure_);
    j["B"] = matrix_to_json(b_);
    j["C"] = matrix_to_json(c_);
    return j;
}

QuadraticPencil QuadraticPencil::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("B") || !j.contains("C"))
        throw InvalidInputError("pencil json: missing B or C");
    Matrix b = matrix_from_json(j.at("B"));
    Matrix c = matrix_from_json(j.at("C"));
    Structure s = Structure::general;
    if (j.contains("structure"))
        s = structure_from_string(j.at("structure").get<std::string>());
    if (j.contains("n") && j.at("n").get<Eigen::Index>() != b.rows())
        throw InvalidInputError("pencil json: n does not match matrix size");
    return QuadraticPencil(std::move(b), std::move(c), s);
}

double check_companion_resolvent_identity(const QuadraticPencil& p, Complex lambda) {
    const Eigen::Index m = p.n();
    const Matrix lhs = p.resolvent(lambda);
    const Matrix c1 = p.companion_matrix();
    const Matrix r = inverse(lambda * Matrix::Identity(2 * m, 2 * m) - c1);
    return spectral_norm(lhs - r.block(0, m, m, m));
}

}  // namespace qp
