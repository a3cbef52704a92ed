#include "search.hpp"

#include <algorithm>
#include <random>

namespace layr {

void validate_budget(const SearchBudget& b) {
    if (b.max_moves < 1) throw Error(Errc::bad_config, "max_moves must be >= 1");
    if (b.step_sizes.empty()) throw Error(Errc::bad_config, "step_sizes must be non-empty");
    for (std::size_t i = 0; i < b.step_sizes.size(); ++i) {
        if (b.step_sizes[i] <= 0)
            throw Error(Errc::bad_config, "step sizes must be positive");
        if (i > 0 && b.step_sizes[i] >= b.step_sizes[i - 1])
            throw Error(Errc::bad_config, "step sizes must be strictly descending");
    }
}

Layout propose_initial(int canvas_w, int canvas_h,
                       const std::vector<const CorpusEntry*>& retrieved) {
    if (retrieved.empty() || retrieved[0] == nullptr)
        throw Error(Errc::empty_retrieval, "propose_initial: no retrieved exemplars");
    const Layout& exemplar = retrieved[0]->layout;

    Layout out;
    out.canvas_w = canvas_w;
    out.canvas_h = canvas_h;
    for (const Element& e : exemplar.elements)
        if (e.kind == ElementType::underlay) out.elements.push_back(e);
    for (const Element& e : exemplar.elements)
        if (e.kind != ElementType::underlay) out.elements.push_back(e);
    for (std::size_t i = 0; i < out.elements.size(); ++i)
        out.elements[i].id = "e" + std::to_string(i);
    return out;
}

namespace {

constexpr double kOmegaTol = 1e-12;

enum class MoveKind { translate, resize, snap };

struct Move {
    MoveKind kind;
    int elem = 0;
    int axis = 0;        // translate/resize: 0 = x/w, 1 = y/h; snap: 0..5
    double amount = 0.0; // signed step for translate/resize
    int other = 0;       // snap partner
};

double axis_value(const BBox& b, int axis) {
    switch (axis) {
        case 0: return b.x;
        case 1: return b.cx();
        case 2: return b.x2();
        case 3: return b.y;
        case 4: return b.cy();
        default: return b.y2();
    }
}

// Candidate box for a move against the current layout.
BBox apply_move(const Layout& l, const Move& m) {
    BBox b = l.elements[m.elem].bbox;
    switch (m.kind) {
        case MoveKind::translate:
            (m.axis == 0 ? b.x : b.y) += m.amount;
            break;
        case MoveKind::resize:
            (m.axis == 0 ? b.w : b.h) += m.amount;
            break;
        case MoveKind::snap: {
            const BBox& o = l.elements[m.other].bbox;
            double d = axis_value(o, m.axis) - axis_value(b, m.axis);
            (m.axis < 3 ? b.x : b.y) += d;
            break;
        }
    }
    return b;
}

// Portable Fisher-Yates; std::shuffle is not pinned across standard libraries.
template <typename T>
void deterministic_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng() % i]);
}

}  // namespace

Layout local_search(const Layout& l0, const CostWeights& w, const SearchBudget& budget,
                    const ProtectedRegion* omega) {
    validate_weights(w);
    validate_budget(budget);
    require_valid(l0);

    Layout cur = l0;
    const int n = static_cast<int>(cur.elements.size());
    if (n == 0) return cur;

    std::mt19937_64 rng(budget.rng_seed);
    double cur_total = cost_unchecked(cur, w, omega).total;
    int accepted = 0;

    for (double step : budget.step_sizes) {
        if (accepted >= budget.max_moves) break;

        std::vector<Move> moves;
        for (int i = 0; i < n; ++i) {
            for (int axis = 0; axis < 2; ++axis)
                for (double s : {step, -step}) {
                    moves.push_back({MoveKind::translate, i, axis, s, 0});
                    moves.push_back({MoveKind::resize, i, axis, s, 0});
                }
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                for (int axis = 0; axis < 6; ++axis)
                    moves.push_back({MoveKind::snap, i, axis, 0.0, j});
            }
        }

        bool improved = true;
        while (improved && accepted < budget.max_moves) {
            improved = false;
            deterministic_shuffle(moves, rng);
            for (const Move& m : moves) {
                if (accepted >= budget.max_moves) break;
                BBox candidate = apply_move(cur, m);
                if (!bbox_valid(candidate)) continue;
                if (omega) {
                    double before = intersection_area(cur.elements[m.elem].bbox, omega->region);
                    double after = intersection_area(candidate, omega->region);
                    if (before <= kOmegaTol && after > kOmegaTol) continue;
                }
                BBox saved = cur.elements[m.elem].bbox;
                cur.elements[m.elem].bbox = candidate;
                double total = cost_unchecked(cur, w, omega).total;
                if (total < cur_total) {
                    cur_total = total;
                    ++accepted;
                    improved = true;
                } else {
                    cur.elements[m.elem].bbox = saved;
                }
            }
        }
    }
    return cur;
}

}  // namespace layr
