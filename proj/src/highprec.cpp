#include "quadpencil/highprec.hpp"

#include <cmath>
#include <limits>

#include "quadpencil/error.hpp"
#include "quadpencil/linalg.hpp"

namespace qp {

void set_precision(unsigned digits) {
    if (digits < 30)
        throw InvalidInputError("highprec: precision must be at least 30 digits");
    BigReal::default_precision(digits);
}

BigComplexMatrix promote(const Matrix& a, unsigned digits) {
    set_precision(digits);
    require_finite(a, "promote");
    BigComplexMatrix r;
    r.rows = static_cast<int>(a.rows());
    r.cols = static_cast<int>(a.cols());
    r.precision = digits;
    r.entries.reserve(std::size_t(r.rows) * r.cols);
    for (int i = 0; i < r.rows; ++i)
        for (int j = 0; j < r.cols; ++j)
            r.entries.emplace_back(a(i, j));
    return r;
}

Matrix demote(const BigComplexMatrix& a) {
    Matrix r(a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            r(i, j) = Complex(a.at(i, j).re.convert_to<double>(),
                              a.at(i, j).im.convert_to<double>());
    return r;
}

BigComplexMatrix big_multiply(const BigComplexMatrix& a, const BigComplexMatrix& b) {
    if (a.cols != b.rows)
        throw InvalidInputError("big_multiply: dimension mismatch");
    BigComplexMatrix r;
    r.rows = a.rows;
    r.cols = b.cols;
    r.precision = a.precision;
    r.entries.assign(std::size_t(r.rows) * r.cols, BigComplex());
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const BigComplex& aik = a.at(i, k);
            for (int j = 0; j < b.cols; ++j)
                r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

BigComplexMatrix big_subtract(const BigComplexMatrix& a, const BigComplexMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw InvalidInputError("big_subtract: dimension mismatch");
    BigComplexMatrix r = a;
    for (std::size_t i = 0; i < r.entries.size(); ++i)
        r.entries[i] -= b.entries[i];
    return r;
}

BigComplexMatrix big_inverse(const BigComplexMatrix& a) {
    if (a.rows != a.cols)
        throw InvalidInputError("big_inverse: matrix not square");
    const int n = a.rows;
    BigComplexMatrix lu = a;
    BigComplexMatrix inv;
    inv.rows = inv.cols = n;
    inv.precision = a.precision;
    inv.entries.assign(std::size_t(n) * n, BigComplex());
    for (int i = 0; i < n; ++i) inv.at(i, i) = BigComplex(BigReal(1), BigReal(0));

    for (int k = 0; k < n; ++k) {
        int piv = k;
        BigReal best = lu.at(k, k).abs();
        for (int i = k + 1; i < n; ++i) {
            BigReal m = lu.at(i, k).abs();
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (best == 0)
            throw SingularMatrixError("big_inverse: zero pivot at index " +
                                          std::to_string(k),
                                      k);
        if (piv != k)
            for (int j = 0; j < n; ++j) {
                std::swap(lu.at(k, j), lu.at(piv, j));
                std::swap(inv.at(k, j), inv.at(piv, j));
            }
        const BigComplex d = lu.at(k, k);
        for (int j = 0; j < n; ++j) {
            lu.at(k, j) = lu.at(k, j) / d;
            inv.at(k, j) = inv.at(k, j) / d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const BigComplex f = lu.at(i, k);
            if (f.re == 0 && f.im == 0) continue;
            for (int j = 0; j < n; ++j) {
                lu.at(i, j) -= f * lu.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

namespace {

BigReal max_abs(const BigComplexMatrix& a) {
    BigReal best(0);
    for (const auto& e : a.entries) {
        BigReal m = e.abs();
        if (m > best) best = m;
    }
    return best;
}

BigComplexMatrix big_identity(int n, unsigned digits) {
    BigComplexMatrix r;
    r.rows = r.cols = n;
    r.precision = digits;
    r.entries.assign(std::size_t(n) * n, BigComplex());
    for (int i = 0; i < n; ++i) r.at(i, i) = BigComplex(BigReal(1), BigReal(0));
    return r;
}

}  // namespace

BigComplexMatrix big_exp(const BigComplexMatrix& a) {
    if (a.rows != a.cols)
        throw InvalidInputError("big_exp: matrix not square");
    const int n = a.rows;
    const unsigned digits = a.precision;

    // Scale so the max entry magnitude is <= 1, Taylor, then square back.
    int s = 0;
    BigReal norm = max_abs(a) * n;
    while (norm > 1) {
        norm /= 2;
        ++s;
    }
    BigComplexMatrix scaled = a;
    if (s > 0) {
        BigReal f = pow(BigReal(2), -s);
        for (auto& e : scaled.entries) {
            e.re *= f;
            e.im *= f;
        }
    }

    const BigReal cutoff = pow(BigReal(10), -static_cast<int>(digits) - 10);
    BigComplexMatrix sum = big_identity(n, digits);
    BigComplexMatrix term = big_identity(n, digits);
    for (int k = 1; k < 10000; ++k) {
        term = big_multiply(term, scaled);
        const BigReal inv_k = BigReal(1) / k;
        for (auto& e : term.entries) {
            e.re *= inv_k;
            e.im *= inv_k;
        }
        for (std::size_t i = 0; i < sum.entries.size(); ++i)
            sum.entries[i] += term.entries[i];
        if (max_abs(term) < cutoff) break;
    }
    for (int i = 0; i < s; ++i) sum = big_multiply(sum, sum);
    return sum;
}

BigComplexMatrix u_of_one_highprec(const Matrix& x1, const Matrix& x2,
                                   const Matrix& z1, const Matrix& z2,
                                   unsigned digits) {
    set_precision(digits);
    const BigComplexMatrix bx1 = promote(x1, digits);
    const BigComplexMatrix bx2 = promote(x2, digits);
    const BigComplexMatrix bz1 = promote(z1, digits);
    const BigComplexMatrix bz2 = promote(z2, digits);

    const BigComplexMatrix x = big_multiply(bx2, big_inverse(bx1));
    const BigComplexMatrix z = big_multiply(bz2, big_inverse(bz1));
    const BigComplexMatrix diff = big_subtract(x, z);
    BigComplexMatrix diff_inv;
    try {
        diff_inv = big_inverse(diff);
    } catch (const SingularMatrixError&) {
        throw DegeneratePartError("u_of_one_highprec: X - Z singular at high precision",
                                  std::numeric_limits<double>::infinity());
    }
    return big_multiply(big_subtract(big_exp(x), big_exp(z)), diff_inv);
}

double relative_error(const Matrix& u_double, const BigComplexMatrix& u_high) {
    if (static_cast<int>(u_double.rows()) != u_high.rows ||
        static_cast<int>(u_double.cols()) != u_high.cols)
        throw InvalidInputError("relative_error: shape mismatch");
    set_precision(u_high.precision);
    const BigComplexMatrix diff =
        big_subtract(promote(u_double, u_high.precision), u_high);
    const double denom = spectral_norm(u_double);
    if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return spectral_norm(demote(diff)) / denom;
}

}  // namespace qp
