#include "quadpencil/scoring.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "quadpencil/error.hpp"
#include "quadpencil/linalg.hpp"

namespace qp {

PairScore score_pair(const SolventPair& pair, std::int64_t splitting_index) {
    PairScore s;
    s.kappa_x1 = pair.X.kappa_x1;
    s.kappa_z1 = pair.Z.kappa_x1;
    s.kappa_x = condition_number(pair.X.X);
    s.kappa_z = condition_number(pair.Z.X);
    s.kappa_diff = pair.kappa_diff;
    for (const double k : {s.kappa_x1, s.kappa_z1, s.kappa_x, s.kappa_z, s.kappa_diff})
        if (std::isinf(k))
            throw UnscorablePairError("score_pair: infinite condition number");
    s.kappa_max = std::max({s.kappa_x1, s.kappa_z1, s.kappa_x, s.kappa_z, s.kappa_diff});
    s.norm_x = spectral_norm(pair.X.X);
    s.norm_z = spectral_norm(pair.Z.X);
    s.splitting_index = splitting_index;
    s.part_x = pair.splitting.part_x;
    s.part_z = pair.splitting.part_z;
    return s;
}

std::pair<PairScore, PairScore> select_best_worst(
    const std::vector<PairScore>& scores) {
    if (scores.empty())
        throw NoPairsError("select_best_worst: empty score sequence");
    std::size_t best = 0, worst = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
        const auto& s = scores[i];
        if (s.kappa_max < scores[best].kappa_max ||
            (s.kappa_max == scores[best].kappa_max &&
             s.splitting_index < scores[best].splitting_index))
            best = i;
        if (s.kappa_max > scores[worst].kappa_max ||
            (s.kappa_max == scores[worst].kappa_max &&
             s.splitting_index < scores[worst].splitting_index))
            worst = i;
    }
    return {scores[best], scores[worst]};
}

double exp_conditioning_lower_bound(const Matrix& X, double t) {
    if (t < 0) throw InvalidInputError("exp_conditioning_lower_bound: t < 0");
    if (t == 0.0) return 0.0;
    return t * spectral_norm(X);
}

nlohmann::json score_to_json(const PairScore& s) {
    nlohmann::json j;
    j["splitting"] = s.part_x;
    j["splitting_z"] = s.part_z;
    j["splitting_index"] = s.splitting_index;
    j["kappa"] = {{"x1", s.kappa_x1}, {"z1", s.kappa_z1}, {"x", s.kappa_x},
                  {"z", s.kappa_z},   {"diff", s.kappa_diff}, {"max", s.kappa_max}};
    j["norm_x"] = s.norm_x;
    j["norm_z"] = s.norm_z;
    return j;
}

}  // namespace qp
