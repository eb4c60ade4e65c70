#include "quadpencil/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "quadpencil/error.hpp"

namespace qp {

SplitMode split_mode_from_string(const std::string& s) {
    if (s == "general") return SplitMode::general;
    if (s == "hermitian") return SplitMode::hermitian;
    if (s == "gyroscopic") return SplitMode::gyroscopic;
    throw InvalidInputError("unknown splitting mode: " + s);
}

std::string split_mode_to_string(SplitMode m) {
    switch (m) {
        case SplitMode::general: return "general";
        case SplitMode::hermitian: return "hermitian";
        case SplitMode::gyroscopic: return "gyroscopic";
    }
    return "general";
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

// Dense ids ordered by smallest member index.
std::vector<int> dense_labels(UnionFind& uf, std::size_t n) {
    std::vector<int> label(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = uf.find(i);
        std::size_t first = i;
        for (std::size_t j = 0; j < i; ++j)
            if (uf.find(j) == r) { first = j; break; }
        if (first == i)
            label[i] = next++;
        else
            label[i] = label[first];
    }
    return label;
}

std::size_t nearest(const std::vector<Complex>& values, Complex target) {
    std::size_t best = 0;
    double bestd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < values.size(); ++j) {
        const double d = std::abs(values[j] - target);
        if (d < bestd) {
            bestd = d;
            best = j;
        }
    }
    return best;
}

constexpr std::uint64_t kCountCap = std::uint64_t(1) << 62;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return (a > kCountCap - b) ? kCountCap : a + b;
}

}  // namespace

std::vector<int> cluster_eigenvalues(const std::vector<Complex>& values, double tol) {
    if (tol <= 0) throw InvalidInputError("cluster_eigenvalues: tol must be > 0");
    const std::size_t m = values.size();
    UnionFind uf(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (std::abs(values[i] - values[j]) <= tol) uf.unite(i, j);
    return dense_labels(uf, m);
}

std::vector<EigenPair> make_eigenpairs(const std::vector<Complex>& values,
                                       const Matrix& vectors, double cluster_tol) {
    if (static_cast<Eigen::Index>(values.size()) != vectors.cols())
        throw InvalidInputError("make_eigenpairs: values/vectors size mismatch");
    const auto ids = cluster_eigenvalues(values, cluster_tol);
    std::vector<EigenPair> pairs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        pairs[i].index = static_cast<int>(i);
        pairs[i].value = values[i];
        pairs[i].vector = vectors.col(static_cast<Eigen::Index>(i));
        pairs[i].cluster_id = ids[i];
    }
    return pairs;
}

SplittingStream::SplittingStream(const std::vector<EigenPair>& pairs, SplitMode mode,
                                 double conj_tol) {
    const std::size_t m = pairs.size();
    if (m == 0 || m % 2 != 0)
        throw InvalidInputError("splittings: need an even, non-zero number of pairs");
    n_ = static_cast<int>(m / 2);

    std::vector<Complex> values(m);
    for (std::size_t i = 0; i < m; ++i) values[i] = pairs[i].value;

    // Atoms: clusters unioned with the mode's symmetry orbits.
    UnionFind uf(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (pairs[i].cluster_id == pairs[j].cluster_id) uf.unite(i, j);

    if (mode != SplitMode::general) {
        std::vector<Complex> targets;
        for (std::size_t i = 0; i < m; ++i) {
            const Complex l = values[i];
            targets.clear();
            targets.push_back(std::conj(l));
            if (mode == SplitMode::gyroscopic) {
                targets.push_back(-l);
                targets.push_back(-std::conj(l));
            }
            for (const Complex t : targets) {
                const std::size_t j = nearest(values, t);
                if (std::abs(values[j] - t) > conj_tol)
                    throw SymmetryViolationError(
                        "splittings: no symmetry partner within tolerance", l);
                uf.unite(i, j);
            }
        }
    }

    const auto label = dense_labels(uf, m);
    const int num_atoms = 1 + *std::max_element(label.begin(), label.end());
    atoms_.assign(num_atoms, {});
    for (std::size_t i = 0; i < m; ++i)
        atoms_[label[i]].push_back(static_cast<int>(i));
    atom_size_.resize(num_atoms);
    for (int a = 0; a < num_atoms; ++a)
        atom_size_[a] = static_cast<int>(atoms_[a].size());

    // Atom 0 (it contains index 0) is pinned to part_x; the rest must sum
    // to n - |atom 0|.
    root_remaining_ = n_ - atom_size_[0];
    if (root_remaining_ < 0) {
        infeasible_ = true;
        diagnostic_ = "atom containing index 0 has " +
                      std::to_string(atom_size_[0]) +
                      " members, larger than the part size " + std::to_string(n_);
        total_count_ = 0;
        done_ = true;
        return;
    }

    suffix_count_.assign(num_atoms + 1,
                         std::vector<std::uint64_t>(root_remaining_ + 1, 0));
    suffix_count_[num_atoms][0] = 1;
    for (int i = num_atoms - 1; i >= 1; --i) {
        for (int r = 0; r <= root_remaining_; ++r) {
            std::uint64_t c = suffix_count_[i + 1][r];
            if (atom_size_[i] <= r)
                c = sat_add(c, suffix_count_[i + 1][r - atom_size_[i]]);
            suffix_count_[i][r] = c;
        }
    }
    total_count_ = (num_atoms == 1) ? (root_remaining_ == 0 ? 1 : 0)
                                    : suffix_count_[1][root_remaining_];
    if (total_count_ == 0) {
        infeasible_ = true;
        diagnostic_ =
            "atom sizes admit no partition into two parts of size " +
            std::to_string(n_);
        done_ = true;
    }
}

// Appends to chosen_ the lexicographically-first completion using atoms
// >= from summing to `remaining`. The suffix-count pre-check guarantees the
// greedy walk either completes or fails before pushing anything.
bool SplittingStream::extend(std::size_t from, int remaining) {
    if (remaining < 0 || from > atoms_.size()) return false;
    if (suffix_count_[from][remaining] == 0) return false;
    for (std::size_t k = from; k < atoms_.size() && remaining > 0; ++k) {
        if (atom_size_[k] <= remaining &&
            suffix_count_[k + 1][remaining - atom_size_[k]] > 0) {
            chosen_.push_back(k);
            remaining -= atom_size_[k];
        }
    }
    remaining_ = 0;
    return true;
}

std::optional<Splitting> SplittingStream::next() {
    if (done_) return std::nullopt;
    if (!started_) {
        started_ = true;
        if (!extend(1, root_remaining_)) {
            done_ = true;
            return std::nullopt;
        }
    } else {
        // Flip the deepest included atom to excluded and re-extend.
        bool found = false;
        while (!chosen_.empty()) {
            const std::size_t j = chosen_.back();
            chosen_.pop_back();
            remaining_ += atom_size_[j];
            if (extend(j + 1, remaining_)) {
                found = true;
                break;
            }
        }
        if (!found) {
            done_ = true;
            return std::nullopt;
        }
    }

    Splitting s;
    s.part_x = atoms_[0];
    for (const std::size_t a : chosen_)
        s.part_x.insert(s.part_x.end(), atoms_[a].begin(), atoms_[a].end());
    std::sort(s.part_x.begin(), s.part_x.end());
    s.part_z.reserve(n_);
    std::size_t xi = 0;
    for (int i = 0; i < 2 * n_; ++i) {
        if (xi < s.part_x.size() && s.part_x[xi] == i)
            ++xi;
        else
            s.part_z.push_back(i);
    }
    s.canonical_flag = true;
    return s;
}

std::uint64_t count_splittings(const std::vector<EigenPair>& pairs, SplitMode mode,
                               double conj_tol) {
    return SplittingStream(pairs, mode, conj_tol).total_count();
}

}  // namespace qp
