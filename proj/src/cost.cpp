#include "cost.hpp"

#include <algorithm>

#include "metrics.hpp"

namespace layr {

void validate_weights(const CostWeights& w) {
    if (w.alpha_overlap < 0 || w.alpha_alignment < 0 || w.alpha_margins < 0)
        throw Error(Errc::bad_config, "cost weights must be non-negative");
    if (w.alpha_overlap == 0 && w.alpha_alignment == 0 && w.alpha_margins == 0)
        throw Error(Errc::bad_config, "at least one cost weight must be positive");
    if (w.margin < 0 || w.margin > 0.25)
        throw Error(Errc::bad_config, "margin must be in [0, 0.25]");
}

CostBreakdown cost_unchecked(const Layout& l, const CostWeights& w,
                             const ProtectedRegion* omega) {
    CostBreakdown b;
    b.c_overlap = overlay(l);
    b.c_alignment = alignment(l);

    double margins = 0.0;
    std::vector<const BBox*> fg;
    for (const Element& e : l.elements)
        if (e.kind != ElementType::underlay) fg.push_back(&e.bbox);
    for (std::size_t i = 0; i < fg.size(); ++i)
        for (std::size_t j = i + 1; j < fg.size(); ++j)
            margins += std::max(0.0, w.margin - box_gap(*fg[i], *fg[j]));
    for (const Element& e : l.elements) {
        const BBox& bb = e.bbox;
        margins += std::max(0.0, w.margin - bb.x);
        margins += std::max(0.0, w.margin - bb.y);
        margins += std::max(0.0, w.margin - (1.0 - bb.x2()));
        margins += std::max(0.0, w.margin - (1.0 - bb.y2()));
    }
    if (omega) {
        double oa = area(omega->region);
        for (const Element& e : l.elements)
            margins += intersection_area(e.bbox, omega->region) / oa;
    }
    b.c_margins = margins;
    b.total = w.alpha_overlap * b.c_overlap + w.alpha_alignment * b.c_alignment +
              w.alpha_margins * b.c_margins;
    return b;
}

CostBreakdown cost(const Layout& l, const CostWeights& w, const ProtectedRegion* omega) {
    validate_weights(w);
    require_valid(l);
    return cost_unchecked(l, w, omega);
}

}  // namespace layr
