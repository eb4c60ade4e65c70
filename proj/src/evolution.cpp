#include "quadpencil/evolution.hpp"

#include <cmath>

#include "quadpencil/error.hpp"
#include "quadpencil/expm.hpp"
#include "quadpencil/linalg.hpp"

namespace qp {

namespace {

struct Operators {
    Matrix u, du;
};

Operators operators_impl(const SolventPair& pair, const Matrix& diff_inv, double t) {
    const Matrix ex = matrix_exp(t * pair.X.X);
    const Matrix ez = matrix_exp(t * pair.Z.X);
    return {(ex - ez) * diff_inv, (pair.X.X * ex - pair.Z.X * ez) * diff_inv};
}

}  // namespace

std::pair<Matrix, Matrix> evolution_operators(const SolventPair& pair, double t) {
    const Matrix diff_inv = inverse(pair.X.X - pair.Z.X);
    auto ops = operators_impl(pair, diff_inv, t);
    return {std::move(ops.u), std::move(ops.du)};
}

std::pair<double, double> check_initial_identities(const SolventPair& pair) {
    const auto [u0, du0] = evolution_operators(pair, 0.0);
    const Eigen::Index n = u0.rows();
    return {spectral_norm(u0),
            spectral_norm(du0 - Matrix::Identity(n, n))};
}

EvolutionResult solve_ivp(const QuadraticPencil& pencil, const SolventPair& pair,
                          const Vector& u0, const Vector& u1, const Forcing& f,
                          const std::vector<double>& grid, int substeps) {
    const Eigen::Index n = pencil.n();
    if (u0.size() != n || u1.size() != n)
        throw InvalidInputError("solve_ivp: initial data has wrong dimension");
    if (grid.empty() || grid.front() != 0.0)
        throw InvalidGridError("solve_ivp: grid must start at 0");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1]))
            throw InvalidGridError("solve_ivp: grid must be strictly increasing");
    if (substeps < 1) throw InvalidInputError("solve_ivp: substeps must be >= 1");

    const Matrix diff_inv = inverse(pair.X.X - pair.Z.X);
    const Vector bu = u1 + pencil.B() * u0;
    const Vector cu = pencil.C() * u0;

    EvolutionResult r;
    r.times = grid;
    r.x_values.reserve(grid.size());
    r.dx_values.reserve(grid.size());

    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid[k];
        const auto ops = operators_impl(pair, diff_inv, t);
        Vector x = ops.du * u0 + ops.u * bu;
        Vector dx = ops.du * u1 - ops.u * cu;

        if (t > 0.0) {
            // Composite Simpson over [0, t] with an even node count
            // proportional to the elapsed grid intervals.
            long m = static_cast<long>(k) * substeps;
            if (m % 2 != 0) ++m;
            if (m < 2) m = 2;
            const double h = t / static_cast<double>(m);
            Vector ix = Vector::Zero(n);
            Vector idx = Vector::Zero(n);
            for (long j = 0; j <= m; ++j) {
                const double s = h * static_cast<double>(j);
                const double w = (j == 0 || j == m) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
                const auto conv = operators_impl(pair, diff_inv, t - s);
                const Vector fs = f(s);
                if (fs.size() != n)
                    throw InvalidInputError("solve_ivp: forcing has wrong dimension");
                ix += w * (conv.u * fs);
                idx += w * (conv.du * fs);
            }
            x += (h / 3.0) * ix;
            dx += (h / 3.0) * idx;
        }
        r.x_values.push_back(std::move(x));
        r.dx_values.push_back(std::move(dx));
    }

    // Central-difference defect on interior grid points (3-point formulas,
    // valid for non-uniform spacing).
    double defect = 0.0;
    for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
        const double hm = grid[k] - grid[k - 1];
        const double hp = grid[k + 1] - grid[k];
        const Vector& xm = r.x_values[k - 1];
        const Vector& x0 = r.x_values[k];
        const Vector& xp = r.x_values[k + 1];
        const Vector d1 =
            (hm * hm * xp - hp * hp * xm + (hp * hp - hm * hm) * x0) /
            (hm * hp * (hm + hp));
        const Vector d2 = 2.0 * (hm * xp + hp * xm - (hm + hp) * x0) /
                          (hm * hp * (hm + hp));
        const Vector res = d2 + pencil.B() * d1 + pencil.C() * x0 - f(grid[k]);
        defect = std::max(defect, res.norm());
    }
    r.residual_max = defect;
    return r;
}

}  // namespace qp
