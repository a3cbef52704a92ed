// Test-only oracles, independent of the library's analytic code paths.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "embedding.hpp"
#include "geometry.hpp"
#include "metrics.hpp"

namespace oracle {

using layr::BBox;
using layr::ElementType;
using layr::Layout;

// Rasterizes boxes onto an N x N occupancy grid of row bitmasks. Boxes whose
// edges land on cell boundaries rasterize exactly.
class Grid {
public:
    explicit Grid(int n) : n_(n), words_((n + 63) / 64) {}

    int size() const { return n_; }

    // Cell range [x0, x1) x [y0, y1): cell c covers [c/n, (c+1)/n).
    struct Rect {
        int x0, y0, x1, y1;
    };

    Rect rect(const BBox& b) const {
        auto lo = [this](double v) {
            return std::clamp(static_cast<int>(std::floor(v * n_ + 1e-9)), 0, n_);
        };
        auto hi = [this](double v) {
            return std::clamp(static_cast<int>(std::ceil(v * n_ - 1e-9)), 0, n_);
        };
        return {lo(b.x), lo(b.y), hi(b.x2()), hi(b.y2())};
    }

    // Cell count of the pairwise intersection, via row bitmask AND.
    long long intersection_cells(const BBox& a, const BBox& b) const {
        Rect ra = rect(a), rb = rect(b);
        int y0 = std::max(ra.y0, rb.y0), y1 = std::min(ra.y1, rb.y1);
        if (y0 >= y1) return 0;
        std::vector<std::uint64_t> rowa(words_, 0), rowb(words_, 0);
        fill_row(rowa, ra.x0, ra.x1);
        fill_row(rowb, rb.x0, rb.x1);
        long long per_row = 0;
        for (std::size_t w = 0; w < words_; ++w)
            per_row += std::popcount(rowa[w] & rowb[w]);
        return per_row * (y1 - y0);
    }

    double cells_to_area(long long cells) const {
        return static_cast<double>(cells) / (static_cast<double>(n_) * n_);
    }

    double intersection_area(const BBox& a, const BBox& b) const {
        return cells_to_area(intersection_cells(a, b));
    }

    double box_area(const BBox& b) const {
        Rect r = rect(b);
        return cells_to_area(static_cast<long long>(r.x1 - r.x0) * (r.y1 - r.y0));
    }

private:
    void fill_row(std::vector<std::uint64_t>& row, int x0, int x1) const {
        for (int x = x0; x < x1; ++x) row[x / 64] |= std::uint64_t(1) << (x % 64);
    }

    int n_;
    std::size_t words_;
};

// Rasterized overlay: non-underlay pairwise intersection over summed area,
// reductions in the same element order as the analytic path.
inline double overlay(const Layout& l, const Grid& g) {
    std::vector<const BBox*> boxes;
    for (const auto& e : l.elements)
        if (e.kind != ElementType::underlay) boxes.push_back(&e.bbox);
    if (boxes.size() < 2) return 0.0;
    double inter = 0.0;
    for (std::size_t i = 0; i < boxes.size(); ++i)
        for (std::size_t j = i + 1; j < boxes.size(); ++j)
            inter += g.intersection_area(*boxes[i], *boxes[j]);
    double total = 0.0;
    for (const BBox* b : boxes) total += g.box_area(*b);
    return std::min(inter / total, 1.0);
}

inline std::optional<double> underlay_loose(const Layout& l, const Grid& g) {
    std::vector<const BBox*> unders, others;
    for (const auto& e : l.elements)
        (e.kind == ElementType::underlay ? unders : others).push_back(&e.bbox);
    if (unders.empty()) return std::nullopt;
    double sum = 0.0;
    for (const BBox* u : unders) {
        double best = 0.0;
        for (const BBox* e : others)
            best = std::max(best, g.intersection_area(*u, *e) / g.box_area(*e));
        sum += std::min(best, 1.0);
    }
    return sum / static_cast<double>(unders.size());
}

// Strict containment checked on the raster: the element's cells must all
// lie inside the underlay's cells.
inline std::optional<double> underlay_strict(const Layout& l, const Grid& g) {
    std::vector<const BBox*> unders, others;
    for (const auto& e : l.elements)
        (e.kind == ElementType::underlay ? unders : others).push_back(&e.bbox);
    if (unders.empty()) return std::nullopt;
    double sum = 0.0;
    for (const BBox* u : unders) {
        bool hit = false;
        for (const BBox* e : others)
            hit = hit || g.intersection_cells(*u, *e) ==
                             g.intersection_cells(*e, *e);
        sum += hit ? 1.0 : 0.0;
    }
    return sum / static_cast<double>(unders.size());
}

inline double gamma2(const Layout& l, const Grid& g) {
    const std::size_t n = l.elements.size();
    if (n == 0) return 1.0;
    double inter = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += g.box_area(l.elements[i].bbox);
        for (std::size_t j = i + 1; j < n; ++j)
            inter += g.intersection_area(l.elements[i].bbox, l.elements[j].bbox);
    }
    return std::clamp(1.0 - inter / total, 0.0, 1.0);
}

// Independent alignment enumeration: builds the six axis arrays up front and
// scans axis-major rather than element-major.
inline double alignment(const Layout& l) {
    const std::size_t n = l.elements.size();
    if (n <= 1) return 0.0;
    std::vector<double> axis[6];
    for (const auto& e : l.elements) {
        axis[0].push_back(e.bbox.x);
        axis[1].push_back(e.bbox.x + e.bbox.w / 2.0);
        axis[2].push_back(e.bbox.x + e.bbox.w);
        axis[3].push_back(e.bbox.y);
        axis[4].push_back(e.bbox.y + e.bbox.h / 2.0);
        axis[5].push_back(e.bbox.y + e.bbox.h);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double best = 1e300;
        for (int a = 0; a < 6; ++a)
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                double d = axis[a][i] - axis[a][j];
                if (d < 0) d = -d;
                if (d < best) best = d;
            }
        sum += best;
    }
    return sum / static_cast<double>(n);
}

// Random valid layout with coordinates on a 1/grid_step grid.
inline Layout random_grid_layout(std::mt19937_64& rng, int max_elements = 6,
                                 int grid_step = 64) {
    std::uniform_int_distribution<int> count(1, max_elements);
    std::uniform_int_distribution<int> kind(0, 2);
    Layout l;
    l.canvas_w = 512;
    l.canvas_h = 512;
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
        std::uniform_int_distribution<int> extent(1, grid_step / 2);
        int w = extent(rng), h = extent(rng);
        std::uniform_int_distribution<int> px(0, grid_step - w), py(0, grid_step - h);
        layr::Element e;
        e.id = "e" + std::to_string(i);
        e.kind = static_cast<ElementType>(kind(rng));
        e.bbox = BBox{px(rng) / double(grid_step), py(rng) / double(grid_step),
                      w / double(grid_step), h / double(grid_step)};
        l.elements.push_back(std::move(e));
    }
    // Underlays first so validation stays warning-free.
    std::stable_partition(l.elements.begin(), l.elements.end(), [](const layr::Element& e) {
        return e.kind == ElementType::underlay;
    });
    return l;
}

// Brute-force top-k by cosine with the same tie rule (descending score,
// ascending id), via full sort.
struct ScoredRef {
    std::string id;
    double score;
};

inline std::vector<ScoredRef> brute_force_topk(const std::vector<layr::Embedding>& corpus,
                                               const layr::Embedding& q, int k) {
    std::vector<ScoredRef> all;
    for (const auto& e : corpus) all.push_back({e.id, layr::cosine(q, e)});
    std::stable_sort(all.begin(), all.end(), [](const ScoredRef& a, const ScoredRef& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    });
    if (all.size() > static_cast<std::size_t>(k)) all.resize(static_cast<std::size_t>(k));
    return all;
}

}  // namespace oracle
