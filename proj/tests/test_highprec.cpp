#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "quadpencil/error.hpp"
#include "quadpencil/evolution.hpp"
#include "quadpencil/expm.hpp"
#include "quadpencil/highprec.hpp"
#include "quadpencil/linalg.hpp"
#include "quadpencil/solvent.hpp"
#include "test_util.hpp"

using namespace qp;
using qptest::random_complex_matrix;

namespace {

// sinh(1) to 50 decimal digits.
const char* kSinh1 =
    "1.17520119364380145688238185059560081515571798133410";

}  // namespace

TEST_CASE("set_precision validates its argument") {
    CHECK_THROWS_AS(set_precision(10), InvalidInputError);
    CHECK_NOTHROW(set_precision(50));
}

TEST_CASE("promote/demote round-trips are exact") {
    SplitMix64 rng(401);
    const Matrix a = random_complex_matrix(rng, 4);
    const Matrix b = demote(promote(a, 60));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(a(i, j) == b(i, j));

    // double(0.1) promotes to its exact binary value, not 1/10.
    Matrix tenth(1, 1);
    tenth(0, 0) = 0.1;
    const auto big = promote(tenth, 60);
    set_precision(60);
    const BigReal diff = big.at(0, 0).re -
                         BigReal("0.1000000000000000055511151231257827021181583404541015625");
    CHECK(abs(diff) < BigReal("1e-55"));
}

TEST_CASE("big arithmetic basics") {
    SplitMix64 rng(403);
    const Matrix a = random_complex_matrix(rng, 3);
    const Matrix b = random_complex_matrix(rng, 3);
    const auto prod = demote(big_multiply(promote(a, 60), promote(b, 60)));
    CHECK(spectral_norm(prod - a * b) <= 1e-14 * spectral_norm(a * b));
    const auto diff = demote(big_subtract(promote(a, 60), promote(b, 60)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(diff(i, j) == a(i, j) - b(i, j));
}

TEST_CASE("big_inverse") {
    SplitMix64 rng(409);
    Matrix a;
    do {
        a = random_complex_matrix(rng, 4);
    } while (condition_number(a) > 1e4);
    const auto inv = demote(big_inverse(promote(a, 60)));
    CHECK(spectral_norm(a * inv - Matrix::Identity(4, 4)) <= 1e-13);

    Matrix s = Matrix::Zero(2, 2);
    s(0, 0) = 1;
    s(0, 1) = 1;  // rank 1
    s(1, 0) = 1;
    s(1, 1) = 1;
    CHECK_THROWS_AS(big_inverse(promote(s, 60)), SingularMatrixError);
}

TEST_CASE("big_exp reproduces sinh(1) to 50 digits") {
    set_precision(60);
    Matrix one(1, 1), mone(1, 1);
    one(0, 0) = 1;
    mone(0, 0) = -1;
    const auto ep = big_exp(promote(one, 60));
    const auto em = big_exp(promote(mone, 60));
    const BigReal sinh1 = (ep.at(0, 0).re - em.at(0, 0).re) / 2;
    CHECK(abs(sinh1 - BigReal(kSinh1)) < BigReal("1e-50"));
}

TEST_CASE("big_exp agrees with the double path on a modest matrix") {
    SplitMix64 rng(419);
    const Matrix a = random_complex_matrix(rng, 4, 1.5);
    const Matrix hd = demote(big_exp(promote(a, 60)));
    const Matrix dd = matrix_exp(a);
    CHECK(spectral_norm(hd - dd) <= 1e-11 * spectral_norm(hd));
}

TEST_CASE("u_of_one_highprec matches the scalar closed form") {
    // x'' = x via eigenvector blocks of the companion [[0,1],[1,0]]:
    // X part eigenvalue +1, Z part -1, both with [1; l]/sqrt(2) columns.
    const double s = 1.0 / std::sqrt(2.0);
    Matrix x1(1, 1), x2(1, 1), z1(1, 1), z2(1, 1);
    x1(0, 0) = s;
    x2(0, 0) = s;
    z1(0, 0) = s;
    z2(0, 0) = -s;
    const auto u = u_of_one_highprec(x1, x2, z1, z2, 60);
    set_precision(60);
    CHECK(abs(u.at(0, 0).re - BigReal(kSinh1)) < BigReal("1e-48"));
    CHECK(abs(u.at(0, 0).im) < BigReal("1e-48"));
}

TEST_CASE("relative_error of the double evaluation is near machine eps") {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix x1(1, 1), x2(1, 1), z1(1, 1), z2(1, 1);
    x1(0, 0) = s;
    x2(0, 0) = s;
    z1(0, 0) = s;
    z2(0, 0) = -s;
    const auto u_high = u_of_one_highprec(x1, x2, z1, z2, 60);

    const Matrix x = x2 * inverse(x1);
    const Matrix z = z2 * inverse(z1);
    const Matrix u_double =
        (matrix_exp(x) - matrix_exp(z)) * inverse(x - z);
    const double eps = relative_error(u_double, u_high);
    CHECK(eps <= 1e-14);
    CHECK(eps >= 0.0);

    // Zero denominator yields the NaN marker.
    BigComplexMatrix zero_high = promote(Matrix::Zero(1, 1), 60);
    CHECK(std::isnan(relative_error(Matrix::Zero(1, 1), zero_high)));
}

TEST_CASE("singular X - Z is flagged") {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix x1(1, 1), x2(1, 1);
    x1(0, 0) = s;
    x2(0, 0) = s;
    CHECK_THROWS_AS(u_of_one_highprec(x1, x2, x1, x2, 60),
                    DegeneratePartError);
}
