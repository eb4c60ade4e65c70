#pragma once

// Independent reference integrator for x'' + B x' + C x = f, used to
// cross-check the exponential-based propagation. Works on the first-order
// system y' = A y + g(t) with y = [x; x'], A the companion matrix, and
// g = [0; f]; classic fixed-step RK4.

#include <vector>

#include "quadpencil/evolution.hpp"
#include "quadpencil/pencil.hpp"

namespace qptest {

struct Rk4State {
    qp::Vector x;
    qp::Vector dx;
};

inline std::vector<Rk4State> rk4_reference(const qp::QuadraticPencil& pencil,
                                           const qp::Vector& u0,
                                           const qp::Vector& u1,
                                           const qp::Forcing& f,
                                           const std::vector<double>& grid,
                                           int steps_per_interval = 200) {
    const Eigen::Index n = pencil.n();
    const qp::Matrix a = pencil.companion_matrix();
    auto rhs = [&](double t, const qp::Vector& y) {
        qp::Vector r = a * y;
        r.tail(n) += f(t);
        return r;
    };

    qp::Vector y(2 * n);
    y.head(n) = u0;
    y.tail(n) = u1;

    std::vector<Rk4State> out;
    out.push_back({u0, u1});
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double h = (grid[i] - grid[i - 1]) / steps_per_interval;
        double t = grid[i - 1];
        for (int s = 0; s < steps_per_interval; ++s) {
            const qp::Vector k1 = rhs(t, y);
            const qp::Vector k2 = rhs(t + h / 2, y + (h / 2) * k1);
            const qp::Vector k3 = rhs(t + h / 2, y + (h / 2) * k2);
            const qp::Vector k4 = rhs(t + h, y + h * k3);
            y += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
            t += h;
        }
        out.push_back({y.head(n), y.tail(n)});
    }
    return out;
}

}  // namespace qptest
