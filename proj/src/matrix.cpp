#include "quadpencil/matrix.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "quadpencil/error.hpp"

namespace qp {

bool is_finite(const Matrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
                return false;
    return true;
}

void require_finite(const Matrix& a, const std::string& what) {
    if (!is_finite(a))
        throw InvalidInputError(what + ": non-finite entries");
}

nlohmann::json matrix_to_json(const Matrix& a) {
    nlohmann::json j;
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    auto data = nlohmann::json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k)
            data.push_back({a(i, k).real(), a(i, k).imag()});
    j["data"] = std::move(data);
    return j;
}

Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw InvalidInputError("matrix json: missing rows/cols/data");
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    if (rows <= 0 || cols <= 0)
        throw InvalidInputError("matrix json: non-positive dimensions");
    const auto& data = j.at("data");
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw InvalidInputError("matrix json: data length mismatch");
    Matrix a(rows, cols);
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index k = 0; k < cols; ++k, ++idx) {
            const auto& e = data.at(idx);
            if (!e.is_array() || e.size() != 2)
                throw InvalidInputError("matrix json: entry is not an [re, im] pair");
            a(i, k) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    require_finite(a, "matrix json");
    return a;
}

nlohmann::json vector_to_json(const Vector& v) {
    auto data = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        data.push_back({v(i).real(), v(i).imag()});
    return data;
}

Vector vector_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty())
        throw InvalidInputError("vector json: expected non-empty array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const auto& e = j.at(i);
        if (!e.is_array() || e.size() != 2)
            throw InvalidInputError("vector json: entry is not an [re, im] pair");
        v(i) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
    return v;
}

}  // namespace qp
