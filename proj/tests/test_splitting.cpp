#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "quadpencil/error.hpp"
#include "quadpencil/splitting.hpp"
#include "test_util.hpp"

using namespace qp;
using qptest::synthetic_pairs;

namespace {

std::vector<Complex> distinct_values(int m) {
    std::vector<Complex> v;
    for (int k = 0; k < m; ++k) v.emplace_back(k, 0.1 * k);
    return v;
}

std::uint64_t binom(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("cluster_eigenvalues") {
    CHECK(cluster_eigenvalues({Complex(1, 0), Complex(2, 0)}) ==
          std::vector<int>{0, 1});
    CHECK(cluster_eigenvalues({Complex(1, 0), Complex(1 + 1e-12, 0)}) ==
          std::vector<int>{0, 0});
    // Chain closure: pairwise neighbors within tol merge transitively even
    // though the endpoints are 1.2e-8 apart.
    CHECK(cluster_eigenvalues(
              {Complex(1.0, 0), Complex(1.0 + 6e-9, 0), Complex(1.0 + 1.2e-8, 0)}) ==
          std::vector<int>{0, 0, 0});
    // Ids are dense and ordered by smallest member.
    CHECK(cluster_eigenvalues({Complex(5, 0), Complex(1, 0), Complex(5, 0)}) ==
          std::vector<int>{0, 1, 0});
}

TEST_CASE("general counts match binom(2n, n)/2") {
    for (int n = 1; n <= 8; ++n) {
        const auto pairs = synthetic_pairs(distinct_values(2 * n));
        CHECK(count_splittings(pairs, SplitMode::general) ==
              binom(2 * n, n) / 2);
    }
}

TEST_CASE("reference counts for larger sizes") {
    CHECK(count_splittings(synthetic_pairs(distinct_values(20)),
                           SplitMode::general) == 92378);
    CHECK(count_splittings(synthetic_pairs(distinct_values(24)),
                           SplitMode::general) == 1352078);
}

TEST_CASE("stream length equals the count and partitions are exact") {
    for (int n = 1; n <= 6; ++n) {
        const auto pairs = synthetic_pairs(distinct_values(2 * n));
        SplittingStream stream(pairs, SplitMode::general);
        std::uint64_t seen = 0;
        std::set<std::vector<int>> parts;
        while (auto s = stream.next()) {
            ++seen;
            REQUIRE(int(s->part_x.size()) == n);
            REQUIRE(int(s->part_z.size()) == n);
            CHECK(std::is_sorted(s->part_x.begin(), s->part_x.end()));
            CHECK(s->part_x.front() == 0);  // canonical: index 0 in part_x
            std::vector<int> all = s->part_x;
            all.insert(all.end(), s->part_z.begin(), s->part_z.end());
            std::sort(all.begin(), all.end());
            for (int i = 0; i < 2 * n; ++i) CHECK(all[i] == i);
            CHECK(parts.insert(s->part_x).second);  // no duplicates
        }
        CHECK(seen == stream.total_count());
    }
}

TEST_CASE("enumeration order is deterministic include-first lexicographic") {
    const auto pairs = synthetic_pairs(distinct_values(4));
    SplittingStream stream(pairs, SplitMode::general);
    std::vector<std::vector<int>> got;
    while (auto s = stream.next()) got.push_back(s->part_x);
    const std::vector<std::vector<int>> want = {{0, 1}, {0, 2}, {0, 3}};
    CHECK(got == want);
}

TEST_CASE("clusters act as atoms") {
    // 2n = 4 with one size-2 cluster {0,1}: atoms {0,1}, {2}, {3}.
    const auto pairs = synthetic_pairs(
        {Complex(1, 0), Complex(1 + 1e-10, 0), Complex(2, 0), Complex(3, 0)});
    SplittingStream stream(pairs, SplitMode::general);
    std::vector<std::vector<int>> got;
    while (auto s = stream.next()) got.push_back(s->part_x);
    CHECK(got == std::vector<std::vector<int>>{{0, 1}});
}

TEST_CASE("infeasible when the pinned atom is too large") {
    // Single cluster of 2 at n = 1... a double eigenvalue: the atom holding
    // index 0 has size 2 > n = 1, so no partition exists.
    const auto pairs =
        synthetic_pairs({Complex(1, 0), Complex(1 + 1e-10, 0)});
    SplittingStream stream(pairs, SplitMode::general);
    CHECK(stream.infeasible());
    CHECK(stream.total_count() == 0);
    CHECK(!stream.next().has_value());
    CHECK(!stream.diagnostic().empty());

    // Jordan-block companion: all four eigenvalues collapse to one atom.
    const auto quad = synthetic_pairs(
        {Complex(0, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0)});
    SplittingStream s4(quad, SplitMode::general);
    CHECK(s4.infeasible());
    CHECK(s4.total_count() == 0);
}

TEST_CASE("hermitian mode groups conjugate pairs") {
    // {1+i, 1-i} with n = 1: one orbit of size 2 > n, infeasible.
    const auto pairs = synthetic_pairs({Complex(1, -1), Complex(1, 1)});
    SplittingStream stream(pairs, SplitMode::hermitian);
    CHECK(stream.infeasible());
    CHECK(stream.total_count() == 0);

    // Two conjugate pairs at n = 2: exactly one canonical splitting keeps
    // each pair whole.
    const auto quad = synthetic_pairs(
        {Complex(1, -1), Complex(1, 1), Complex(2, -1), Complex(2, 1)});
    SplittingStream s4(quad, SplitMode::hermitian);
    std::uint64_t seen = 0;
    while (auto s = s4.next()) {
        ++seen;
        // A conjugate pair never straddles the cut.
        const bool has0 = std::count(s->part_x.begin(), s->part_x.end(), 0) > 0;
        const bool has1 = std::count(s->part_x.begin(), s->part_x.end(), 1) > 0;
        CHECK(has0 == has1);
    }
    CHECK(seen == 1);

    // Real eigenvalues are their own conjugates: singleton atoms.
    const auto real4 = synthetic_pairs(
        {Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0)});
    CHECK(count_splittings(real4, SplitMode::hermitian) == 3);
}

TEST_CASE("gyroscopic mode groups quadruples") {
    // {l, -l, conj l, -conj l} with l = 1 + 2i: one orbit of 4, n = 2,
    // single splitting containing the whole orbit.
    const auto quad = synthetic_pairs(
        {Complex(-1, -2), Complex(-1, 2), Complex(1, -2), Complex(1, 2)});
    SplittingStream stream(quad, SplitMode::gyroscopic);
    CHECK(stream.infeasible());  // orbit size 4 > n = 2

    // Purely imaginary pairs {it, -it} form size-2 orbits.
    const auto imag4 = synthetic_pairs(
        {Complex(0, -2), Complex(0, -1), Complex(0, 1), Complex(0, 2)});
    SplittingStream s4(imag4, SplitMode::gyroscopic);
    std::uint64_t seen = 0;
    while (auto s = s4.next()) {
        ++seen;
        for (int i : s->part_x) {
            // -lambda partner of each member sits in the same part.
            const Complex neg = -imag4[std::size_t(i)].value;
            bool found = false;
            for (int j : s->part_x)
                if (std::abs(imag4[std::size_t(j)].value - neg) < 1e-12)
                    found = true;
            CHECK(found);
        }
    }
    CHECK(seen == 1);
}

TEST_CASE("symmetry violation when a partner is missing") {
    const auto pairs = synthetic_pairs(
        {Complex(1, -1), Complex(1, 1), Complex(2, 1), Complex(3, 0)});
    CHECK_THROWS_AS(SplittingStream(pairs, SplitMode::hermitian),
                    SymmetryViolationError);

    const auto gpairs = synthetic_pairs(
        {Complex(-1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0)});
    CHECK_THROWS_AS(SplittingStream(gpairs, SplitMode::gyroscopic),
                    SymmetryViolationError);
}

TEST_CASE("odd eigenvalue list is rejected") {
    CHECK_THROWS_AS(SplittingStream(synthetic_pairs(distinct_values(3)),
                                    SplitMode::general),
                    InvalidInputError);
}
