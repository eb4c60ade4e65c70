#include "quadpencil/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "quadpencil/error.hpp"

namespace qp {

double spectral_norm(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0)
        throw InvalidInputError("spectral_norm: empty matrix");
    require_finite(a, "spectral_norm");
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

std::vector<double> singular_values(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0)
        throw InvalidInputError("singular_values: empty matrix");
    require_finite(a, "singular_values");
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& s = svd.singularValues();
    return std::vector<double>(s.data(), s.data() + s.size());
}

Matrix inverse(const Matrix& a) {
    if (a.rows() != a.cols())
        throw InvalidInputError("inverse: matrix not square");
    require_finite(a, "inverse");
    const Eigen::Index n = a.rows();
    Matrix lu = a;
    Matrix inv = Matrix::Identity(n, n);
    // Row elimination applied to [A | I] in place.
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index piv = k;
        double best = std::abs(lu(k, k));
        for (Eigen::Index i = k + 1; i < n; ++i) {
            const double m = std::abs(lu(i, k));
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (best < 1e-300)
            throw SingularMatrixError("inverse: pivot below cutoff at index " +
                                          std::to_string(k),
                                      static_cast<int>(k));
        if (piv != k) {
            lu.row(k).swap(lu.row(piv));
            inv.row(k).swap(inv.row(piv));
        }
        const Complex d = lu(k, k);
        lu.row(k) /= d;
        inv.row(k) /= d;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == k) continue;
            const Complex f = lu(i, k);
            if (f != Complex(0, 0)) {
                lu.row(i) -= f * lu.row(k);
                inv.row(i) -= f * inv.row(k);
            }
        }
    }
    return inv;
}

double condition_number(const Matrix& a) {
    if (a.rows() != a.cols())
        throw InvalidInputError("condition_number: matrix not square");
    const auto s = singular_values(a);
    const double smax = s.front();
    const double smin = s.back();
    if (smin < 1e-300 * smax || smin == 0.0)
        return std::numeric_limits<double>::infinity();
    return smax / smin;
}

}  // namespace qp
