#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace layr {

struct RGBA {
    std::uint8_t r = 0, g = 0, b = 0, a = 255;
};

// Row-major straight-alpha RGBA8 image.
struct RasterImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // width * height * 4

    static RasterImage solid(int w, int h, RGBA c);

    std::uint8_t* at(int x, int y) { return pixels.data() + 4 * (static_cast<std::size_t>(y) * width + x); }
    const std::uint8_t* at(int x, int y) const {
        return pixels.data() + 4 * (static_cast<std::size_t>(y) * width + x);
    }
};

// Pixel-space destination rectangle plus the scale applied to the asset.
struct Placement {
    int x = 0, y = 0, w = 1, h = 1;
    double sx = 1.0, sy = 1.0;
};

// Pixel rectangle for a normalized bbox: round half away from zero, at least
// 1x1, clamped to the canvas.
Placement pixel_rect(const BBox& bbox, int canvas_w, int canvas_h);

Placement place(int asset_w, int asset_h, const BBox& bbox, int canvas_w, int canvas_h);

RasterImage rescale_nearest(const RasterImage& src, int w, int h);

// Straight-alpha "over": out = (1 - a_src) * dst + a_src * src per channel,
// output alpha = max(dst_a, src_a). src must already match placement size.
void blend_over(RasterImage& dst, const RasterImage& src, const Placement& p);

// Per-channel mean over the bbox pixel region, alpha ignored, range [0,1].
std::array<double, 3> dominant_color(const RasterImage& img, const BBox& bbox);

// Maps element asset strings to pixel data. "#rrggbb"/"#rrggbbaa" are solid
// fills; anything else is a path relative to base_dir. Elements without an
// asset get a per-type placeholder fill. Decoded files are cached.
class AssetResolver {
public:
    AssetResolver() = default;
    explicit AssetResolver(std::string base_dir) : base_dir_(std::move(base_dir)) {}

    // Native-size pixel content; solid fills adopt the destination size.
    RasterImage native(const Element& e, int dest_w, int dest_h);

    static RGBA default_fill(ElementType kind);
    static bool parse_hex_color(const std::string& s, RGBA& out);

private:
    std::string base_dir_;
    std::vector<std::pair<std::string, RasterImage>> cache_;
};

RasterImage composite(const RasterImage& canvas, const Layout& l, AssetResolver& assets);

}  // namespace layr
