#pragma once

#include <cstdint>
#include <string>

#include "ldpcw/analysis.hpp"
#include "ldpcw/builders.hpp"
#include "ldpcw/errors.hpp"
#include "ldpcw/rng.hpp"

namespace ldpcw {

enum class RandomFamily { Gallager, Ru };

struct SearchOutcome {
    LinearCode code;
    std::uint64_t seed = 0;       // derived seed of the winning candidate
    DistanceResult distance;
    std::size_t candidates = 0;
};

// Draw `candidates` codes with derived seeds (base_seed, index) and keep the
// best by (d_min descending, A_dmin ascending). Candidates whose distance
// search hits its cap are skipped.
inline SearchOutcome search_best_code(RandomFamily family, unsigned j_weight,
                                      unsigned k_weight, std::size_t n,
                                      std::size_t candidates, std::uint64_t base_seed,
                                      const AnalysisBudget& budget = {}) {
    if (candidates == 0) throw domain_error("search: need at least one candidate");
    SearchOutcome best;
    bool have = false;
    for (std::size_t idx = 0; idx < candidates; ++idx) {
        const std::uint64_t seed = derive_seed(base_seed, idx);
        LinearCode code = family == RandomFamily::Gallager
                              ? build_gallager(j_weight, k_weight, n, seed)
                              : build_ru(j_weight, k_weight, n, seed).code;
        const DistanceResult d = min_distance(code, budget);
        if (d.status != SearchStatus::Exact) continue;
        const bool better =
            !have || d.distance > best.distance.distance ||
            (d.distance == best.distance.distance && d.count < best.distance.count);
        if (better) {
            best.code = std::move(code);
            best.seed = seed;
            best.distance = d;
            have = true;
        }
    }
    if (!have) throw budget_error("search: no candidate finished within the cap");
    best.candidates = candidates;
    return best;
}

}  // namespace ldpcw
