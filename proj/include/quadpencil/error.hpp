#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInputError : Error {
    using Error::Error;
};

// Raised by inverse() when elimination meets a pivot below the cutoff.
struct SingularMatrixError : Error {
    int pivot_index;
    SingularMatrixError(const std::string& msg, int pivot)
        : Error(msg), pivot_index(pivot) {}
};

struct ConvergenceError : Error {
    using Error::Error;
};

struct OverflowRiskError : Error {
    using Error::Error;
};

// lambda is (numerically) a point of the pencil spectrum.
struct SpectrumPointError : Error {
    std::complex<double> lambda;
    SpectrumPointError(const std::string& msg, std::complex<double> l)
        : Error(msg), lambda(l) {}
};

// Declared spectral symmetry (conjugation / sign) has no matching partner.
struct SymmetryViolationError : Error {
    std::complex<double> unmatched;
    SymmetryViolationError(const std::string& msg, std::complex<double> v)
        : Error(msg), unmatched(v) {}
};

struct InfeasibleSplittingError : Error {
    using Error::Error;
};

// X1 (or Z1) singular or past the condition cap; the splitting is rejected.
struct DegeneratePartError : Error {
    double kappa_x1;
    DegeneratePartError(const std::string& msg, double kappa)
        : Error(msg), kappa_x1(kappa) {}
};

struct IncompletePairError : Error {
    double kappa_diff;
    IncompletePairError(const std::string& msg, double kappa)
        : Error(msg), kappa_diff(kappa) {}
};

struct UnscorablePairError : Error {
    using Error::Error;
};

struct NoPairsError : Error {
    using Error::Error;
};

struct BudgetError : Error {
    using Error::Error;
};

struct InvalidGridError : Error {
    using Error::Error;
};

}  // namespace qp
