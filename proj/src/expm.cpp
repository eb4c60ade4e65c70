#include "quadpencil/expm.hpp"

#include <Eigen/LU>
#include <array>
#include <cmath>

#include "quadpencil/error.hpp"
#include "quadpencil/linalg.hpp"

namespace qp {

namespace {

// Pade order selection thresholds on the 1-norm (Higham 2005).
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

double one_norm(const Matrix& a) {
    double best = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

template <std::size_t N>
Matrix pade(const Matrix& a, const std::array<double, N>& b) {
    const Eigen::Index n = a.rows();
    const Matrix a2 = a * a;
    Matrix u = Matrix::Zero(n, n);  // odd part, before the final A factor
    Matrix v = Matrix::Zero(n, n);  // even part
    Matrix pow = Matrix::Identity(n, n);
    for (std::size_t k = 0; k + 1 < N; k += 2) {
        v += b[k] * pow;
        u += b[k + 1] * pow;
        pow = pow * a2;
    }
    if (N % 2 == 1) v += b[N - 1] * pow;
    u = a * u;
    return (v - u).partialPivLu().solve(v + u);
}

Matrix pade13(const Matrix& a) {
    static const std::array<double, 14> b = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    const Eigen::Index n = a.rows();
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a2 * a4;
    const Matrix id = Matrix::Identity(n, n);
    Matrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                    b[5] * a4 + b[3] * a2 + b[1] * id);
    Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
               b[4] * a4 + b[2] * a2 + b[0] * id;
    return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Matrix matrix_exp(const Matrix& a) {
    if (a.rows() != a.cols())
        throw InvalidInputError("matrix_exp: matrix not square");
    require_finite(a, "matrix_exp");
    if (spectral_norm(a) > 1e8)
        throw OverflowRiskError("matrix_exp: ||A|| > 1e8, refusing");

    const double nrm = one_norm(a);
    if (nrm <= kTheta3)
        return pade<4>(a, {120.0, 60.0, 12.0, 1.0});
    if (nrm <= kTheta5)
        return pade<6>(a, {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0});
    if (nrm <= kTheta7)
        return pade<8>(a, {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0,
                           1512.0, 56.0, 1.0});
    if (nrm <= kTheta9)
        return pade<10>(a, {17643225600.0, 8821612800.0, 2075673600.0,
                            302702400.0, 30270240.0, 2162160.0, 110880.0,
                            3960.0, 90.0, 1.0});

    int s = 0;
    double scaled = nrm;
    while (scaled > kTheta13) {
        scaled /= 2.0;
        ++s;
    }
    Matrix e = pade13(a / std::pow(2.0, s));
    for (int i = 0; i < s; ++i) e = e * e;
    return e;
}

}  // namespace qp
