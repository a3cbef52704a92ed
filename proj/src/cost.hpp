#pragma once

#include "geometry.hpp"

namespace layr {

struct CostWeights {
    double alpha_overlap = 1.0;
    double alpha_alignment = 0.5;
    double alpha_margins = 0.5;
    double margin = 0.02;  // minimum spacing, normalized units
};

struct CostBreakdown {
    double c_overlap = 0.0;
    double c_alignment = 0.0;
    double c_margins = 0.0;
    double total = 0.0;
};

void validate_weights(const CostWeights& w);

// Weighted layout cost. Overlap counts non-underlay pairs only; margins
// charge spacing shortfalls between non-underlay pairs and against canvas
// edges; a protected region charges its covered fraction per element.
CostBreakdown cost(const Layout& l, const CostWeights& w,
                   const ProtectedRegion* omega = nullptr);

// Same terms without layout validation; callers guarantee validity.
CostBreakdown cost_unchecked(const Layout& l, const CostWeights& w,
                             const ProtectedRegion* omega = nullptr);

}  // namespace layr
