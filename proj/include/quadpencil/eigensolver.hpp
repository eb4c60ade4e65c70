#pragma once

#include <memory>
#include <vector>

#include "quadpencil/matrix.hpp"

namespace qp {

struct EigenDecomposition {
    std::vector<Complex> values;   // sorted by (re, im) ascending
    Matrix vectors;                // column j: unit-norm eigenvector of values[j]
    std::vector<double> residuals; // per pair ||A v - lambda v||_2
};

// Dense nonsymmetric eigensolver backend. The bundled default reduces to
// Hessenberg form and runs implicitly shifted QR (complex Schur), then
// recovers eigenvectors by back-substitution.
class EigenBackend {
public:
    virtual ~EigenBackend() = default;
    // Raw eigenpairs; normalization, ordering and residual checks happen
    // in eigenpairs() below.
    virtual void solve(const Matrix& a, std::vector<Complex>& values,
                       Matrix& vectors) const = 0;
};

const EigenBackend& default_eigen_backend();

// Full eigendecomposition of a general complex matrix, m <= 64.
// Throws ConvergenceError when residuals exceed tol_eig * ||A||_2.
EigenDecomposition eigenpairs(const Matrix& a, double tol_eig = 1e-10,
                              const EigenBackend* backend = nullptr);

}  // namespace qp
