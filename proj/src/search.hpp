#pragma once

#include <cstdint>
#include <vector>

#include "cost.hpp"
#include "retrieval.hpp"

namespace layr {

struct SearchBudget {
    int max_moves = 4000;  // accepted-move cap
    std::uint64_t rng_seed = 0;
    std::vector<double> step_sizes = {0.08, 0.04, 0.02, 0.01, 0.005};
};

void validate_budget(const SearchBudget& b);

// Copies the top-ranked exemplar's element count, types, and normalized
// boxes onto the target canvas, underlays first, with fresh ids.
Layout propose_initial(int canvas_w, int canvas_h,
                       const std::vector<const CorpusEntry*>& retrieved);

// Greedy first-improvement descent over translate/resize/snap moves.
// Accepts a move only when it strictly lowers total cost, keeps the layout
// valid, and does not put a previously clear box onto the protected region.
// Element count and types never change. Deterministic for a given seed.
Layout local_search(const Layout& l0, const CostWeights& w, const SearchBudget& budget,
                    const ProtectedRegion* omega = nullptr);

}  // namespace layr
