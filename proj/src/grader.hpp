#pragma once

#include <array>

#include "raster.hpp"

namespace layr {

struct Thresholds {
    double t1 = 0.5;  // color cohesion
    double t2 = 0.9;  // spacing
    double t3 = 0.8;  // visibility
};

void validate_thresholds(const Thresholds& t);

struct GraderReport {
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    double gamma3 = 1.0;
    Thresholds thresholds;
    std::array<bool, 3> passes{true, true, true};
    bool accepted = true;
};

inline constexpr int kDefaultOcclusionGrid = 256;
inline constexpr double kOcclusionThreshold = 0.5;

// Color cohesion: exp(-sigma) where sigma is the mean per-channel population
// standard deviation of element-region dominant colors on the composite.
double gamma1(const Layout& l, const RasterImage& composite);

// Spacing: 1 - pairwise overlap over summed area, across ALL element pairs
// (underlays included; this is the grader's internal check, unlike Ove).
double gamma2(const Layout& l);

// Visibility: an element is occluded when later-rendered non-underlay
// elements cover more than half of it; coverage measured on an occupancy
// grid over the canvas.
double gamma3(const Layout& l, int grid = kDefaultOcclusionGrid);

// Per-element coverage fractions by later non-underlay elements; the
// primitive under gamma3, also used to pick feedback targets.
std::vector<double> occlusion_fractions(const Layout& l, int grid = kDefaultOcclusionGrid);

GraderReport grade(const Layout& l, const RasterImage& composite, const Thresholds& t,
                   int occlusion_grid = kDefaultOcclusionGrid);

}  // namespace layr
