#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "quadpencil/solvent.hpp"

namespace qp {

struct PairScore {
    double kappa_x1 = 1.0;
    double kappa_z1 = 1.0;
    double kappa_x = 1.0;
    double kappa_z = 1.0;
    double kappa_diff = 1.0;
    double kappa_max = 1.0;
    double norm_x = 0.0;
    double norm_z = 0.0;
    std::int64_t splitting_index = 0;
    std::vector<int> part_x;
    std::vector<int> part_z;
};

// Fills the five condition numbers, their maximum, and the solvent norms.
// Throws UnscorablePairError when any kappa is the infinity marker.
PairScore score_pair(const SolventPair& pair, std::int64_t splitting_index = 0);

// argmin / argmax of kappa_max; ties break to the smaller splitting_index.
// Throws NoPairsError on an empty sequence.
std::pair<PairScore, PairScore> select_best_worst(
    const std::vector<PairScore>& scores);

// nu(X, t) >= t ||X||: lower bound on the conditioning of X -> e^{Xt}.
double exp_conditioning_lower_bound(const Matrix& X, double t);

nlohmann::json score_to_json(const PairScore& s);

}  // namespace qp
