#pragma once

#include <vector>

#include "quadpencil/pencil.hpp"
#include "quadpencil/splitting.hpp"

namespace qp {

struct Solvent {
    Matrix X;
    double residual = 0.0;   // ||X^2 + B X + C||_2
    double kappa_x1 = 1.0;   // condition number of the X1 block
    std::vector<int> source_part;
};

struct SolventPair {
    Solvent X;
    Solvent Z;
    double kappa_diff = 1.0;  // condition number of X - Z
    Splitting splitting;
};

// Stacks the selected eigenvectors into [X1; X2] (columns in index order,
// i.e. ascending eigenvalue order) and blocks of the 2n x n matrix.
void stack_part(const std::vector<EigenPair>& pairs, const std::vector<int>& part,
                Matrix& x1, Matrix& x2);

// X = X2 X1^-1. Throws DegeneratePartError when kappa(X1) > kappa_cap or X1
// is singular, and when the residual breaks the solvent invariant
// residual <= tol_solvent * (||X||^2 + ||B|| ||X|| + ||C||).
Solvent solvent_from_part(const QuadraticPencil& pencil,
                          const std::vector<EigenPair>& pairs,
                          const std::vector<int>& part,
                          double kappa_cap = 1e12,
                          double tol_solvent = 1e-8);

// Builds both solvents of a splitting; IncompletePairError when
// kappa(X - Z) exceeds kappa_cap.
SolventPair make_pair(const QuadraticPencil& pencil,
                      const std::vector<EigenPair>& pairs, const Splitting& s,
                      double kappa_cap = 1e12, double tol_solvent = 1e-8);

// Max over samples of ||L(l) - (l 1 + X + B)(l 1 - X)||_2 / max(1, |l|^2).
double verify_factorization(const QuadraticPencil& pencil, const Matrix& X,
                            const std::vector<Complex>& lambda_samples);

// Max relative defect of L(l)^-1 = ((l1-X)^-1 - (l1-Z)^-1)(X-Z)^-1.
// Throws SpectrumPointError for samples on sigma(X) or sigma(Z).
double verify_partial_fractions(const QuadraticPencil& pencil,
                                const SolventPair& pair,
                                const std::vector<Complex>& lambda_samples);

// Bottleneck distance between eig(companion) and eig(X) u eig(Z) as
// multisets under minimal-weight matching.
double spectrum_union_defect(const QuadraticPencil& pencil, const SolventPair& pair);

}  // namespace qp
