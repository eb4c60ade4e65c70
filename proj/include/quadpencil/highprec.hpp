#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <vector>

#include "quadpencil/matrix.hpp"

namespace qp {

using BigReal = boost::multiprecision::mpfr_float;

struct BigComplex {
    BigReal re, im;

    BigComplex() : re(0), im(0) {}
    BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
    explicit BigComplex(const Complex& z) : re(z.real()), im(z.imag()) {}

    BigComplex operator+(const BigComplex& o) const { return {re + o.re, im + o.im}; }
    BigComplex operator-(const BigComplex& o) const { return {re - o.re, im - o.im}; }
    BigComplex operator*(const BigComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    BigComplex operator/(const BigComplex& o) const {
        const BigReal d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
    BigComplex& operator+=(const BigComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    BigComplex& operator-=(const BigComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    BigReal abs() const { return sqrt(re * re + im * im); }
};

// Dense arbitrary-precision complex matrix; precision is the decimal-digit
// setting active when the entries were created.
struct BigComplexMatrix {
    int rows = 0;
    int cols = 0;
    unsigned precision = 100;  // decimal digits, >= 30
    std::vector<BigComplex> entries;  // row-major

    BigComplex& at(int i, int j) { return entries[std::size_t(i) * cols + j]; }
    const BigComplex& at(int i, int j) const {
        return entries[std::size_t(i) * cols + j];
    }
};

// Sets the thread's working precision (decimal digits, >= 30).
void set_precision(unsigned digits);

// Binary-exact embedding of each double.
BigComplexMatrix promote(const Matrix& a, unsigned digits);

// Nearest-double demotion; exact round-trip for promoted values.
Matrix demote(const BigComplexMatrix& a);

BigComplexMatrix big_multiply(const BigComplexMatrix& a, const BigComplexMatrix& b);
BigComplexMatrix big_subtract(const BigComplexMatrix& a, const BigComplexMatrix& b);

// Gaussian elimination with partial pivoting at working precision.
// Throws SingularMatrixError on a vanishing pivot.
BigComplexMatrix big_inverse(const BigComplexMatrix& a);

// Scaled Taylor series with term-magnitude cutoff 10^(-digits-10).
BigComplexMatrix big_exp(const BigComplexMatrix& a);

// Recomputes X = X2 X1^-1, Z = Z2 Z1^-1 and U(1) = (e^X - e^Z)(X - Z)^-1
// entirely at `digits` decimal digits, starting from binary-exact promoted
// copies of the double-precision blocks.
BigComplexMatrix u_of_one_highprec(const Matrix& x1, const Matrix& x2,
                                   const Matrix& z1, const Matrix& z2,
                                   unsigned digits);

// ||U_double - U_high|| / ||U_double||, difference taken at high precision
// and demoted before the spectral norm. Returns NaN (undefined marker) when
// the denominator vanishes.
double relative_error(const Matrix& u_double, const BigComplexMatrix& u_high);

}  // namespace qp
