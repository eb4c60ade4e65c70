#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "quadpencil/error.hpp"
#include "quadpencil/linalg.hpp"
#include "quadpencil/solvent.hpp"
#include "test_util.hpp"

using namespace qp;
using qptest::accepted_pairs;
using qptest::decompose;
using qptest::random_pencil;

namespace {

qptest::Pipeline scalar_pm1() {
    Matrix b = Matrix::Zero(1, 1), c(1, 1);
    c(0, 0) = -1;  // lambda^2 - 1: solvents +1 and -1
    return decompose(QuadraticPencil(b, c));
}

qptest::Pipeline example_x1() {
    Matrix b(2, 2), c(2, 2);
    b << 1, 0, 3, 3;
    c << 1, 0, 2, 2;
    return decompose(QuadraticPencil(b, c));
}

double solvent_scale(const QuadraticPencil& p, const Matrix& x) {
    const double nx = spectral_norm(x);
    return nx * nx + spectral_norm(p.B()) * nx + spectral_norm(p.C());
}

}  // namespace

TEST_CASE("stack_part shape and column order") {
    const auto pl = example_x1();
    Matrix x1, x2;
    stack_part(pl.pairs, {0, 3}, x1, x2);
    REQUIRE(x1.rows() == 2);
    REQUIRE(x1.cols() == 2);
    REQUIRE(x2.rows() == 2);
    // Column j holds the eigenvector of the j-th listed index: top half in
    // X1, bottom half in X2.
    const std::vector<int> part = {0, 3};
    for (int j = 0; j < 2; ++j) {
        const Vector& v = pl.pairs[std::size_t(part[std::size_t(j)])].vector;
        for (int i = 0; i < 2; ++i) {
            CHECK(x1(i, j) == v(i));
            CHECK(x2(i, j) == v(i + 2));
        }
    }
}

TEST_CASE("scalar solvents of lambda^2 - 1") {
    const auto pl = scalar_pm1();
    // Sorted values: -1 at index 0, +1 at index 1.
    const auto s0 = solvent_from_part(pl.pencil, pl.pairs, {0});
    const auto s1 = solvent_from_part(pl.pencil, pl.pairs, {1});
    CHECK(std::abs(s0.X(0, 0) - Complex(-1, 0)) < 1e-12);
    CHECK(std::abs(s1.X(0, 0) - Complex(1, 0)) < 1e-12);
    CHECK(s0.residual < 1e-12);

    const auto pair = make_pair(pl.pencil, pl.pairs, {{0}, {1}});
    CHECK(pair.kappa_diff == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("degenerate part is rejected") {
    const auto pl = example_x1();
    // Eigenvectors of -2 and -1 share their X1 span: X1 singular.
    CHECK_THROWS_AS(solvent_from_part(pl.pencil, pl.pairs, {0, 1}),
                    DegeneratePartError);
    // A mixed part works.
    const auto s = solvent_from_part(pl.pencil, pl.pairs, {0, 3});
    CHECK(s.residual <= 1e-8 * solvent_scale(pl.pencil, s.X));
}

TEST_CASE("solvent residual invariant on random pencils") {
    SplitMix64 rng(101);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 2 + int(rng.next() % 3);  // 2..4
        const auto pl = decompose(random_pencil(rng, n));
        for (const auto& pair : accepted_pairs(pl, SplitMode::general)) {
            CHECK(pair.X.residual <=
                  1e-8 * solvent_scale(pl.pencil, pair.X.X));
            CHECK(pair.Z.residual <=
                  1e-8 * solvent_scale(pl.pencil, pair.Z.X));
            CHECK(std::isfinite(pair.kappa_diff));
        }
    }
}

TEST_CASE("factorization identity L = (l + X + B)(l - X)") {
    const auto pl = scalar_pm1();
    const auto s = solvent_from_part(pl.pencil, pl.pairs, {1});
    CHECK(verify_factorization(pl.pencil, s.X,
                               {Complex(2, 0), Complex(0, 3), Complex(-5, 1)}) <=
          1e-12);

    SplitMix64 rng(103);
    for (int trial = 0; trial < 5; ++trial) {
        const auto pl2 = decompose(random_pencil(rng, 3));
        std::vector<Complex> samples;
        for (int k = 0; k < 8; ++k)
            samples.emplace_back(rng.symmetric(4.0), rng.symmetric(4.0));
        for (const auto& pair : accepted_pairs(pl2, SplitMode::general)) {
            CHECK(verify_factorization(pl2.pencil, pair.X.X, samples) <= 1e-8);
            CHECK(verify_factorization(pl2.pencil, pair.Z.X, samples) <= 1e-8);
        }
    }
}

TEST_CASE("partial fractions identity") {
    const auto pl = scalar_pm1();
    const auto pair = make_pair(pl.pencil, pl.pairs, {{0}, {1}});
    CHECK(verify_partial_fractions(pl.pencil, pair,
                                   {Complex(2, 0), Complex(0, 1)}) <= 1e-12);
    // Samples on the spectrum are refused.
    CHECK_THROWS_AS(
        verify_partial_fractions(pl.pencil, pair, {Complex(1, 0)}),
        SpectrumPointError);

    SplitMix64 rng(107);
    for (int trial = 0; trial < 5; ++trial) {
        const auto pl2 = decompose(random_pencil(rng, 3));
        std::vector<Complex> samples;
        for (int k = 0; k < 6; ++k)
            samples.emplace_back(rng.symmetric(5.0), rng.symmetric(5.0));
        for (const auto& pair2 : accepted_pairs(pl2, SplitMode::general)) {
            if (std::max({pair2.X.kappa_x1, pair2.Z.kappa_x1,
                          pair2.kappa_diff}) > 1e6)
                continue;
            try {
                CHECK(verify_partial_fractions(pl2.pencil, pair2, samples) <=
                      1e-7);
            } catch (const SpectrumPointError&) {
            }
        }
    }
}

TEST_CASE("spectrum of a complete pair covers the companion spectrum") {
    SplitMix64 rng(109);
    for (int trial = 0; trial < 8; ++trial) {
        const auto pl = decompose(random_pencil(rng, 3));
        const double scale = std::max(
            {1.0, spectral_norm(pl.pencil.B()), spectral_norm(pl.pencil.C())});
        for (const auto& pair : accepted_pairs(pl, SplitMode::general)) {
            if (std::max(pair.X.kappa_x1, pair.Z.kappa_x1) > 1e6) continue;
            CHECK(spectrum_union_defect(pl.pencil, pair) <= 1e-7 * scale);
        }
    }
}

TEST_CASE("incomplete pair is rejected") {
    // Commuting diagonal solvents X = diag(1, 2), Z = diag(1 + 1e-4, 3):
    // kappa(X - Z) = 1e4, well above a 1e3 cap, while each X1 block stays
    // benign.
    Matrix x = Matrix::Zero(2, 2), z = Matrix::Zero(2, 2);
    x(0, 0) = 1;
    x(1, 1) = 2;
    z(0, 0) = 1 + 1e-4;
    z(1, 1) = 3;
    const auto pl = decompose(QuadraticPencil(-(x + z), x * z));
    // Sorted eigenvalues: 1, 1+1e-4, 2, 3 -> X part {0, 2}, Z part {1, 3}.
    const Splitting s{{0, 2}, {1, 3}, true};
    CHECK_NOTHROW(make_pair(pl.pencil, pl.pairs, s));
    CHECK_THROWS_AS(make_pair(pl.pencil, pl.pairs, s, 1e3),
                    IncompletePairError);
}
