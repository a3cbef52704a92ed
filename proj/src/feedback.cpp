#include "feedback.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace layr {

const char* to_string(DeltaReason r) {
    switch (r) {
        case DeltaReason::resolve_overlap: return "resolve_overlap";
        case DeltaReason::snap_align: return "snap_align";
        case DeltaReason::exit_protected_region: return "exit_protected_region";
        case DeltaReason::clamp_canvas: return "clamp_canvas";
    }
    return "resolve_overlap";
}

namespace {

constexpr double kTol = 1e-12;

struct Shift {
    double dx = 0.0, dy = 0.0;
    double magnitude() const { return std::abs(dx) + std::abs(dy); }
};

bool shifted_box_ok(const BBox& b, const Shift& s, const ProtectedRegion* omega) {
    BBox moved = clamp_to_canvas(BBox{b.x + s.dx, b.y + s.dy, b.w, b.h});
    if (!bbox_valid(moved)) return false;
    if (omega && intersection_area(moved, omega->region) > kTol) return false;
    return true;
}

// Candidate translations that zero the intersection with `other`;
// order fixes ties: -x, +x, -y, +y for region exits, +x, -x, +y, -y for
// overlap resolution (matched below).
std::vector<Shift> exit_shifts(const BBox& b, const BBox& other, bool region_exit) {
    double left = other.x - b.x2();    // negative
    double right = other.x2() - b.x;   // positive
    double up = other.y - b.y2();      // negative
    double down = other.y2() - b.y;    // positive
    if (region_exit) return {{left, 0}, {right, 0}, {0, up}, {0, down}};
    return {{right, 0}, {left, 0}, {0, down}, {0, up}};
}

// Minimal-displacement shift whose clamped result is feasible. Prefers
// candidates that actually stay clear of `other` after clamping.
bool pick_shift(const BBox& b, const BBox& other, bool region_exit,
                const ProtectedRegion* omega, Shift& out) {
    std::vector<Shift> candidates = exit_shifts(b, other, region_exit);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Shift& a, const Shift& c) { return a.magnitude() < c.magnitude(); });
    auto clear_after_clamp = [&](const Shift& s) {
        BBox moved = clamp_to_canvas(BBox{b.x + s.dx, b.y + s.dy, b.w, b.h});
        return intersection_area(moved, other) <= kTol;
    };
    for (const Shift& s : candidates)
        if (shifted_box_ok(b, s, omega) && clear_after_clamp(s)) {
            out = s;
            return true;
        }
    for (const Shift& s : candidates)
        if (shifted_box_ok(b, s, omega)) {
            out = s;
            return true;
        }
    return false;
}

}  // namespace

FeedbackPlan feedback(const Layout& l, const GraderReport& report,
                      const ProtectedRegion* omega) {
    FeedbackPlan plan;
    if (report.accepted) return plan;

    const auto& elems = l.elements;
    std::unordered_set<std::size_t> taken;

    // Rule 1: clear the protected region.
    if (omega) {
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (intersection_area(elems[i].bbox, omega->region) <= kTol) continue;
            Shift s;
            if (!pick_shift(elems[i].bbox, omega->region, /*region_exit=*/true, omega, s))
                continue;  // boxed in; leave it to the search polish
            plan.deltas.push_back(
                {elems[i].id, s.dx, s.dy, 0.0, 0.0, DeltaReason::exit_protected_region});
            taken.insert(i);
        }
    }

    // Rule 2: worst-overlapping non-underlay pair; the later box moves.
    if (!report.passes[1]) {
        double worst = kTol;
        std::size_t wi = 0, wj = 0;
        bool found = false;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (elems[i].kind == ElementType::underlay) continue;
            for (std::size_t j = i + 1; j < elems.size(); ++j) {
                if (elems[j].kind == ElementType::underlay) continue;
                double inter = intersection_area(elems[i].bbox, elems[j].bbox);
                if (inter > worst) {
                    worst = inter;
                    wi = i;
                    wj = j;
                    found = true;
                }
            }
        }
        if (found && !taken.count(wj)) {
            Shift s;
            if (pick_shift(elems[wj].bbox, elems[wi].bbox, /*region_exit=*/false, omega, s)) {
                plan.deltas.push_back(
                    {elems[wj].id, s.dx, s.dy, 0.0, 0.0, DeltaReason::resolve_overlap});
                taken.insert(wj);
            }
        }
    }

    // Rule 3: most-occluded box moves off its largest later overlapper.
    if (!report.passes[2]) {
        std::vector<double> fractions = occlusion_fractions(l);
        std::size_t target = 0;
        double best = 0.0;
        for (std::size_t i = 0; i < fractions.size(); ++i)
            if (fractions[i] > best) {
                best = fractions[i];
                target = i;
            }
        if (best > kOcclusionThreshold && !taken.count(target)) {
            double worst = kTol;
            std::size_t blocker = 0;
            bool found = false;
            for (std::size_t k = target + 1; k < elems.size(); ++k) {
                if (elems[k].kind == ElementType::underlay) continue;
                double inter = intersection_area(elems[target].bbox, elems[k].bbox);
                if (inter > worst) {
                    worst = inter;
                    blocker = k;
                    found = true;
                }
            }
            Shift s;
            if (found &&
                pick_shift(elems[target].bbox, elems[blocker].bbox, false, omega, s)) {
                plan.deltas.push_back(
                    {elems[target].id, s.dx, s.dy, 0.0, 0.0, DeltaReason::resolve_overlap});
                taken.insert(target);
            }
        }
    }

    // Rule 4: a pure color rejection has no geometric fix.
    if (plan.deltas.empty() && !report.passes[0] && report.passes[1] && report.passes[2])
        plan.uncorrectable_color = true;
    return plan;
}

Layout refine(const Layout& l, const FeedbackPlan& plan, const CostWeights& w,
              const SearchBudget& budget, const ProtectedRegion* omega) {
    std::unordered_map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < l.elements.size(); ++i) by_id[l.elements[i].id] = i;

    Layout out = l;
    for (const Delta& d : plan.deltas) {
        auto it = by_id.find(d.element_id);
        if (it == by_id.end())
            throw Error(Errc::unknown_element,
                        "refine: plan references unknown element \"" + d.element_id + "\"");
        BBox& b = out.elements[it->second].bbox;
        b.x += d.dx;
        b.y += d.dy;
        b.w = std::min(std::max(b.w + d.dw, 1e-6), 1.0);
        b.h = std::min(std::max(b.h + d.dh, 1e-6), 1.0);
        b = clamp_to_canvas(b);
    }
    return local_search(out, w, budget, omega);
}

}  // namespace layr
