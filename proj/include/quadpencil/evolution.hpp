#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "quadpencil/solvent.hpp"

namespace qp {

struct EvolutionResult {
    std::vector<double> times;
    std::vector<Vector> x_values;
    std::vector<Vector> dx_values;
    double residual_max = 0.0;  // finite-difference defect of x'' + Bx' + Cx - f
};

using Forcing = std::function<Vector(double)>;

// U(t)  = (e^{Xt} - e^{Zt})(X - Z)^-1
// U'(t) = (X e^{Xt} - Z e^{Zt})(X - Z)^-1
std::pair<Matrix, Matrix> evolution_operators(const SolventPair& pair, double t);

// (||U(0)||, ||U'(0) - 1||); test support.
std::pair<double, double> check_initial_identities(const SolventPair& pair);

// x(t)  = U'(t) u0 + U(t)(u1 + B u0) + int_0^t U(t-s) f(s) ds
// x'(t) = U'(t) u1 - U(t) C u0     + int_0^t U'(t-s) f(s) ds
// Convolution by composite Simpson with `substeps` subintervals per grid
// interval. Grid must start at 0 and be strictly increasing.
EvolutionResult solve_ivp(const QuadraticPencil& pencil, const SolventPair& pair,
                          const Vector& u0, const Vector& u1, const Forcing& f,
                          const std::vector<double>& grid, int substeps = 32);

}  // namespace qp
