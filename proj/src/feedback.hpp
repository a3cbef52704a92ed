#pragma once

#include <string>
#include <vector>

#include "grader.hpp"
#include "search.hpp"

namespace layr {

enum class DeltaReason { resolve_overlap, snap_align, exit_protected_region, clamp_canvas };

const char* to_string(DeltaReason r);

struct Delta {
    std::string element_id;
    double dx = 0.0, dy = 0.0, dw = 0.0, dh = 0.0;
    DeltaReason reason = DeltaReason::resolve_overlap;
};

struct FeedbackPlan {
    std::vector<Delta> deltas;           // at most one per element
    bool uncorrectable_color = false;    // only gamma1 failed; geometry cannot fix it
};

// Corrective shifts for a rejected layout. Priority: clear the protected
// region, then separate the worst-overlapping non-underlay pair (moving the
// later-rendered box by the minimal translation that zeroes the overlap),
// then unbury the most-occluded box the same way. Every delta is pre-checked
// so the shifted box, after clamping, stays off the protected region.
FeedbackPlan feedback(const Layout& l, const GraderReport& report,
                      const ProtectedRegion* omega = nullptr);

// Applies the plan (each delta followed by a canvas clamp) and runs a
// local-search polish with the protected region enforced.
Layout refine(const Layout& l, const FeedbackPlan& plan, const CostWeights& w,
              const SearchBudget& budget, const ProtectedRegion* omega = nullptr);

}  // namespace layr
