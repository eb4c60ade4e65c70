#include "quadpencil/eigensolver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>

#include "quadpencil/error.hpp"
#include "quadpencil/linalg.hpp"

namespace qp {

namespace {

class QrBackend final : public EigenBackend {
public:
    void solve(const Matrix& a, std::vector<Complex>& values,
               Matrix& vectors) const override {
        Eigen::ComplexEigenSolver<Matrix> es(a, /*computeEigenvectors=*/true);
        if (es.info() != Eigen::Success)
            throw ConvergenceError("eigenpairs: QR iteration did not converge");
        const Eigen::Index m = a.rows();
        values.resize(m);
        for (Eigen::Index j = 0; j < m; ++j)
            values[j] = es.eigenvalues()(j);
        vectors = es.eigenvectors();
    }
};

}  // namespace

const EigenBackend& default_eigen_backend() {
    static const QrBackend backend;
    return backend;
}

EigenDecomposition eigenpairs(const Matrix& a, double tol_eig,
                              const EigenBackend* backend) {
    if (a.rows() != a.cols())
        throw InvalidInputError("eigenpairs: matrix not square");
    if (a.rows() > 64)
        throw InvalidInputError("eigenpairs: size cap is 64");
    require_finite(a, "eigenpairs");
    if (!backend) backend = &default_eigen_backend();

    std::vector<Complex> values;
    Matrix vectors;
    backend->solve(a, values, vectors);

    const Eigen::Index m = a.rows();
    std::vector<Eigen::Index> order(m);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        if (values[i].real() != values[j].real())
            return values[i].real() < values[j].real();
        return values[i].imag() < values[j].imag();
    });

    EigenDecomposition d;
    d.values.resize(m);
    d.vectors.resize(m, m);
    d.residuals.resize(m);
    const double anorm = spectral_norm(a);
    for (Eigen::Index j = 0; j < m; ++j) {
        const Eigen::Index src = order[j];
        d.values[j] = values[src];
        Vector v = vectors.col(src);
        v /= v.norm();
        d.vectors.col(j) = v;
        d.residuals[j] = (a * v - d.values[j] * v).norm();
        if (d.residuals[j] > tol_eig * std::max(anorm, 1e-300))
            throw ConvergenceError("eigenpairs: residual above tolerance");
    }
    return d;
}

}  // namespace qp
