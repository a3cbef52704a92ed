#include "grader.hpp"

#include <algorithm>
#include <cmath>

namespace layr {

void validate_thresholds(const Thresholds& t) {
    for (double v : {t.t1, t.t2, t.t3})
        if (v < 0.0 || v > 1.0)
            throw Error(Errc::bad_config, "thresholds must be in [0, 1]");
}

double gamma1(const Layout& l, const RasterImage& composite) {
    const std::size_t n = l.elements.size();
    if (n <= 1) return 1.0;
    std::vector<std::array<double, 3>> colors;
    colors.reserve(n);
    for (const Element& e : l.elements)
        colors.push_back(dominant_color(composite, e.bbox));

    double sigma_sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        double mean = 0.0;
        for (const auto& col : colors) mean += col[c];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (const auto& col : colors) var += (col[c] - mean) * (col[c] - mean);
        sigma_sum += std::sqrt(var / static_cast<double>(n));
    }
    return std::exp(-sigma_sum / 3.0);
}

double gamma2(const Layout& l) {
    const std::size_t n = l.elements.size();
    if (n == 0) return 1.0;
    double inter = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += area(l.elements[i].bbox);
        for (std::size_t j = i + 1; j < n; ++j)
            inter += intersection_area(l.elements[i].bbox, l.elements[j].bbox);
    }
    return std::clamp(1.0 - inter / total, 0.0, 1.0);
}

namespace {

struct CellRect {
    int x0, y0, x1, y1;  // half-open cell ranges

    bool empty() const { return x0 >= x1 || y0 >= y1; }
};

// Cells whose centers fall inside the half-open box [v0, v1).
CellRect cell_rect(const BBox& b, int grid) {
    auto edge = [grid](double v) {
        return std::clamp(static_cast<int>(std::ceil(v * grid - 0.5)), 0, grid);
    };
    return {edge(b.x), edge(b.y), edge(b.x2()), edge(b.y2())};
}

}  // namespace

std::vector<double> occlusion_fractions(const Layout& l, int grid) {
    const std::size_t n = l.elements.size();
    std::vector<double> fractions(n, 0.0);
    if (n == 0) return fractions;
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(grid) * grid);

    for (std::size_t j = 0; j < n; ++j) {
        CellRect own = cell_rect(l.elements[j].bbox, grid);
        if (own.empty()) continue;
        std::fill(mask.begin(), mask.end(), 0);
        bool any = false;
        for (std::size_t k = j + 1; k < n; ++k) {
            if (l.elements[k].kind == ElementType::underlay) continue;
            CellRect r = cell_rect(l.elements[k].bbox, grid);
            for (int y = r.y0; y < r.y1; ++y)
                std::fill(mask.begin() + static_cast<std::size_t>(y) * grid + r.x0,
                          mask.begin() + static_cast<std::size_t>(y) * grid + r.x1, 1);
            any = any || !r.empty();
        }
        if (!any) continue;
        long covered = 0;
        for (int y = own.y0; y < own.y1; ++y)
            for (int x = own.x0; x < own.x1; ++x)
                covered += mask[static_cast<std::size_t>(y) * grid + x];
        long cells = static_cast<long>(own.x1 - own.x0) * (own.y1 - own.y0);
        fractions[j] = static_cast<double>(covered) / static_cast<double>(cells);
    }
    return fractions;
}

double gamma3(const Layout& l, int grid) {
    const std::size_t n = l.elements.size();
    if (n == 0) return 1.0;
    std::vector<double> fractions = occlusion_fractions(l, grid);
    long occluded = std::count_if(fractions.begin(), fractions.end(),
                                  [](double f) { return f > kOcclusionThreshold; });
    return 1.0 - static_cast<double>(occluded) / static_cast<double>(n);
}

GraderReport grade(const Layout& l, const RasterImage& composite, const Thresholds& t,
                   int occlusion_grid) {
    validate_thresholds(t);
    GraderReport r;
    r.gamma1 = gamma1(l, composite);
    r.gamma2 = gamma2(l);
    r.gamma3 = gamma3(l, occlusion_grid);
    r.thresholds = t;
    r.passes = {r.gamma1 >= t.t1, r.gamma2 >= t.t2, r.gamma3 >= t.t3};
    r.accepted = r.passes[0] && r.passes[1] && r.passes[2];
    return r;
}

}  // namespace layr
