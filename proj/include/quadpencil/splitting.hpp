#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadpencil/matrix.hpp"

namespace qp {

struct EigenPair {
    int index = 0;       // position in [0, 2n)
    Complex value;
    Vector vector;       // unit-norm element of C^{2n}
    int cluster_id = 0;
};

enum class SplitMode { general, hermitian, gyroscopic };

SplitMode split_mode_from_string(const std::string& s);
std::string split_mode_to_string(SplitMode m);

// Transitive closure of |l_i - l_j| <= tol; ids dense from 0, ordered by
// smallest member index.
std::vector<int> cluster_eigenvalues(const std::vector<Complex>& values,
                                     double tol = 1e-8);

// Attaches cluster ids to raw eigenpairs.
std::vector<EigenPair> make_eigenpairs(const std::vector<Complex>& values,
                                       const Matrix& vectors,
                                       double cluster_tol = 1e-8);

struct Splitting {
    std::vector<int> part_x;  // sorted, size n, contains index 0
    std::vector<int> part_z;  // sorted, size n
    bool canonical_flag = true;
};

// Lazy stream of all canonical splittings. Atoms of the enumeration are
// clusters merged with the symmetry orbits of the mode: conjugate pairs
// (hermitian), {l, -l, conj l, -conj l} quadruples (gyroscopic). Each atom
// goes entirely into one part; the atom holding index 0 is pinned to
// part_x. Enumeration order is deterministic (include-first lexicographic
// over the atom-inclusion bitmask).
//
// Throws SymmetryViolationError at construction when a declared orbit has
// no partner within conj_tol. When no size-n partition of the atoms
// exists the stream is empty and infeasible() explains why.
class SplittingStream {
public:
    SplittingStream(const std::vector<EigenPair>& pairs, SplitMode mode,
                    double conj_tol = 1e-8);

    std::optional<Splitting> next();

    std::uint64_t total_count() const { return total_count_; }
    bool infeasible() const { return infeasible_; }
    const std::string& diagnostic() const { return diagnostic_; }

private:
    bool extend(std::size_t from, int remaining);

    int n_ = 0;
    std::vector<std::vector<int>> atoms_;  // atoms_[0] contains index 0
    std::vector<int> atom_size_;
    // suffix_count_[i][r]: subsets of atoms i.. summing to r (saturating).
    std::vector<std::vector<std::uint64_t>> suffix_count_;
    std::uint64_t total_count_ = 0;
    bool infeasible_ = false;
    std::string diagnostic_;

    bool started_ = false;
    bool done_ = false;
    int root_remaining_ = 0;
    int remaining_ = 0;
    std::vector<std::size_t> chosen_;  // selected atom indices, increasing
};

// Count without materializing the stream.
std::uint64_t count_splittings(const std::vector<EigenPair>& pairs, SplitMode mode,
                               double conj_tol = 1e-8);

}  // namespace qp
