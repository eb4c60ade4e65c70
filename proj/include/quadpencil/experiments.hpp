#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "quadpencil/pencil.hpp"
#include "quadpencil/scoring.hpp"
#include "quadpencil/splitting.hpp"

namespace qp {

enum class Family { complex_uniform, hermitian_real, gyroscopic_real };

Family family_from_string(const std::string& s);
std::string family_to_string(Family f);
SplitMode family_mode(Family f);
Structure family_structure(Family f);

struct ExperimentSpec {
    Family family = Family::complex_uniform;
    int n = 4;
    double scale_b = 1.0;
    double scale_c = 1.0;
    std::uint64_t seed = 0;
    unsigned oracle_digits = 100;
    bool oracle = true;
    double kappa_cap = 1e12;
    double cluster_tol = 1e-8;
    std::uint64_t budget = 3'000'000;
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::vector<Complex> eigenvalues;
    std::vector<PairScore> scores;       // accepted pairs only
    std::uint64_t splittings_total = 0;  // admissible splittings attempted
    std::int64_t best_index = -1;        // splitting_index of the selection
    std::int64_t worst_index = -1;
    double eps_best = 0.0;   // valid only when spec.oracle
    double eps_worst = 0.0;
};

// Deterministic counter-based PRNG (SplitMix64); stable across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // Uniform in [-scale, scale].
    double symmetric(double scale) {
        const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return (2.0 * u - 1.0) * scale;
    }

private:
    std::uint64_t state_;
};

QuadraticPencil generate_pencil(const ExperimentSpec& spec);

// Full pipeline: generate, eigendecompose, enumerate admissible
// splittings, build/score all pairs, select best and worst, optionally
// run the high-precision oracle on both.
ExperimentReport run_experiment(const ExperimentSpec& spec);

// SVG scatter of the 2n eigenvalues: part_x filled circles, part_z stars;
// plus a CSV twin {re, im, part} next to it (.csv extension).
void emit_spectrum_plot(const ExperimentReport& report, const std::string& which,
                        const std::string& svg_path);

nlohmann::json report_to_json(const ExperimentReport& report);
nlohmann::json spec_to_json(const ExperimentSpec& spec);

// Temp file + rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace qp
