#include "quadpencil/solvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quadpencil/eigensolver.hpp"
#include "quadpencil/error.hpp"
#include "quadpencil/linalg.hpp"

namespace qp {

void stack_part(const std::vector<EigenPair>& pairs, const std::vector<int>& part,
                Matrix& x1, Matrix& x2) {
    const Eigen::Index n = static_cast<Eigen::Index>(part.size());
    if (pairs.size() != static_cast<std::size_t>(2 * n))
        throw InvalidInputError("stack_part: part must hold half of the pairs");
    x1.resize(n, n);
    x2.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Vector& v = pairs.at(part[j]).vector;
        if (v.size() != 2 * n)
            throw InvalidInputError("stack_part: eigenvector has wrong length");
        x1.col(j) = v.head(n);
        x2.col(j) = v.tail(n);
    }
}

Solvent solvent_from_part(const QuadraticPencil& pencil,
                          const std::vector<EigenPair>& pairs,
                          const std::vector<int>& part, double kappa_cap,
                          double tol_solvent) {
    if (static_cast<Eigen::Index>(part.size()) != pencil.n())
        throw InvalidInputError("solvent_from_part: |part| must equal n");
    Matrix x1, x2;
    stack_part(pairs, part, x1, x2);

    const double kappa = condition_number(x1);
    if (!(kappa <= kappa_cap))
        throw DegeneratePartError("solvent_from_part: kappa(X1) past cap", kappa);

    Solvent s;
    s.X = x2 * inverse(x1);
    s.kappa_x1 = kappa;
    s.source_part = part;
    s.residual = spectral_norm(s.X * s.X + pencil.B() * s.X + pencil.C());

    const double nx = spectral_norm(s.X);
    const double scale =
        nx * nx + spectral_norm(pencil.B()) * nx + spectral_norm(pencil.C());
    if (s.residual > tol_solvent * std::max(scale, 1e-300))
        throw DegeneratePartError(
            "solvent_from_part: residual breaks the solvent invariant", kappa);
    return s;
}

SolventPair make_pair(const QuadraticPencil& pencil,
                      const std::vector<EigenPair>& pairs, const Splitting& s,
                      double kappa_cap, double tol_solvent) {
    SolventPair p;
    p.X = solvent_from_part(pencil, pairs, s.part_x, kappa_cap, tol_solvent);
    p.Z = solvent_from_part(pencil, pairs, s.part_z, kappa_cap, tol_solvent);
    p.splitting = s;
    p.kappa_diff = condition_number(p.X.X - p.Z.X);
    if (!(p.kappa_diff <= kappa_cap))
        throw IncompletePairError("make_pair: kappa(X - Z) past cap", p.kappa_diff);
    return p;
}

double verify_factorization(const QuadraticPencil& pencil, const Matrix& X,
                            const std::vector<Complex>& lambda_samples) {
    const Eigen::Index n = pencil.n();
    const Matrix id = Matrix::Identity(n, n);
    double worst = 0.0;
    for (const Complex l : lambda_samples) {
        const Matrix lhs = pencil.evaluate(l);
        const Matrix rhs = (l * id + X + pencil.B()) * (l * id - X);
        worst = std::max(worst,
                         spectral_norm(lhs - rhs) / std::max(1.0, std::norm(l)));
    }
    return worst;
}

double verify_partial_fractions(const QuadraticPencil& pencil,
                                const SolventPair& pair,
                                const std::vector<Complex>& lambda_samples) {
    const Eigen::Index n = pencil.n();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix diff_inv = inverse(pair.X.X - pair.Z.X);
    double worst = 0.0;
    for (const Complex l : lambda_samples) {
        const Matrix lx = l * id - pair.X.X;
        const Matrix lz = l * id - pair.Z.X;
        for (const Matrix* m : {&lx, &lz}) {
            const auto sv = singular_values(*m);
            if (sv.back() < 1e-12 * std::max(1.0, sv.front()))
                throw SpectrumPointError(
                    "verify_partial_fractions: sample on sigma(X) or sigma(Z)", l);
        }
        const Matrix lhs = pencil.resolvent(l);
        const Matrix rhs = (inverse(lx) - inverse(lz)) * diff_inv;
        worst = std::max(worst, spectral_norm(lhs - rhs) / spectral_norm(lhs));
    }
    return worst;
}

namespace {

// Greedy minimal-weight matching between equal-size multisets: repeatedly
// match the globally closest unmatched pair; returns the largest matched
// distance.
double bottleneck_match(std::vector<Complex> a, std::vector<Complex> b) {
    const std::size_t m = a.size();
    std::vector<bool> ua(m, false), ub(m, false);
    double worst = 0.0;
    for (std::size_t step = 0; step < m; ++step) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (ua[i]) continue;
            for (std::size_t j = 0; j < m; ++j) {
                if (ub[j]) continue;
                const double d = std::abs(a[i] - b[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        ua[bi] = ub[bj] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

double spectrum_union_defect(const QuadraticPencil& pencil,
                             const SolventPair& pair) {
    const auto comp = eigenpairs(pencil.companion_matrix());
    const auto ex = eigenpairs(pair.X.X);
    const auto ez = eigenpairs(pair.Z.X);
    std::vector<Complex> solvent_spec = ex.values;
    solvent_spec.insert(solvent_spec.end(), ez.values.begin(), ez.values.end());
    return bottleneck_match(comp.values, solvent_spec);
}

}  // namespace qp
