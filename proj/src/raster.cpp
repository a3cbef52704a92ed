#include "raster.hpp"

#include <algorithm>
#include <cmath>

#include "png_io.hpp"

namespace layr {

RasterImage RasterImage::solid(int w, int h, RGBA c) {
    RasterImage img;
    img.width = w;
    img.height = h;
    img.pixels.resize(static_cast<std::size_t>(w) * h * 4);
    for (std::size_t i = 0; i < img.pixels.size(); i += 4) {
        img.pixels[i] = c.r;
        img.pixels[i + 1] = c.g;
        img.pixels[i + 2] = c.b;
        img.pixels[i + 3] = c.a;
    }
    return img;
}

namespace {

int round_half_away(double v) {
    return static_cast<int>(std::lround(v));
}

}  // namespace

Placement pixel_rect(const BBox& bbox, int canvas_w, int canvas_h) {
    Placement p;
    p.x = round_half_away(bbox.x * canvas_w);
    p.y = round_half_away(bbox.y * canvas_h);
    p.w = std::max(1, round_half_away(bbox.w * canvas_w));
    p.h = std::max(1, round_half_away(bbox.h * canvas_h));
    p.x = std::clamp(p.x, 0, std::max(0, canvas_w - 1));
    p.y = std::clamp(p.y, 0, std::max(0, canvas_h - 1));
    p.w = std::min(p.w, canvas_w - p.x);
    p.h = std::min(p.h, canvas_h - p.y);
    return p;
}

Placement place(int asset_w, int asset_h, const BBox& bbox, int canvas_w, int canvas_h) {
    Placement p = pixel_rect(bbox, canvas_w, canvas_h);
    p.sx = static_cast<double>(p.w) / asset_w;
    p.sy = static_cast<double>(p.h) / asset_h;
    return p;
}

RasterImage rescale_nearest(const RasterImage& src, int w, int h) {
    if (src.width == w && src.height == h) return src;
    RasterImage out;
    out.width = w;
    out.height = h;
    out.pixels.resize(static_cast<std::size_t>(w) * h * 4);
    for (int y = 0; y < h; ++y) {
        int sy = std::min(src.height - 1,
                          static_cast<int>(std::floor((y + 0.5) * src.height / h)));
        for (int x = 0; x < w; ++x) {
            int sx = std::min(src.width - 1,
                              static_cast<int>(std::floor((x + 0.5) * src.width / w)));
            const std::uint8_t* s = src.at(sx, sy);
            std::uint8_t* d = out.at(x, y);
            d[0] = s[0];
            d[1] = s[1];
            d[2] = s[2];
            d[3] = s[3];
        }
    }
    return out;
}

void blend_over(RasterImage& dst, const RasterImage& src, const Placement& p) {
    for (int y = 0; y < p.h; ++y) {
        int dy = p.y + y;
        if (dy < 0 || dy >= dst.height) continue;
        for (int x = 0; x < p.w; ++x) {
            int dx = p.x + x;
            if (dx < 0 || dx >= dst.width) continue;
            const std::uint8_t* s = src.at(x, y);
            std::uint8_t* d = dst.at(dx, dy);
            double as = s[3] / 255.0;
            for (int c = 0; c < 3; ++c) {
                double v = (1.0 - as) * d[c] + as * s[c];
                d[c] = static_cast<std::uint8_t>(std::floor(v + 0.5));
            }
            d[3] = std::max(d[3], s[3]);
        }
    }
}

std::array<double, 3> dominant_color(const RasterImage& img, const BBox& bbox) {
    Placement p = pixel_rect(bbox, img.width, img.height);
    double sum[3] = {0.0, 0.0, 0.0};
    for (int y = p.y; y < p.y + p.h; ++y)
        for (int x = p.x; x < p.x + p.w; ++x) {
            const std::uint8_t* px = img.at(x, y);
            sum[0] += px[0];
            sum[1] += px[1];
            sum[2] += px[2];
        }
    double n = static_cast<double>(p.w) * p.h * 255.0;
    return {sum[0] / n, sum[1] / n, sum[2] / n};
}

RGBA AssetResolver::default_fill(ElementType kind) {
    switch (kind) {
        case ElementType::text: return {0x40, 0x40, 0x40, 0xff};
        case ElementType::logo: return {0x33, 0x66, 0xcc, 0xff};
        case ElementType::underlay: return {0xd9, 0xd9, 0xd9, 0xff};
    }
    return {0, 0, 0, 0xff};
}

bool AssetResolver::parse_hex_color(const std::string& s, RGBA& out) {
    if (s.size() != 7 && s.size() != 9) return false;
    if (s[0] != '#') return false;
    auto hex = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    std::uint8_t v[4] = {0, 0, 0, 0xff};
    for (std::size_t i = 1; i + 1 < s.size(); i += 2) {
        int hi = hex(s[i]), lo = hex(s[i + 1]);
        if (hi < 0 || lo < 0) return false;
        v[(i - 1) / 2] = static_cast<std::uint8_t>(hi * 16 + lo);
    }
    out = {v[0], v[1], v[2], v[3]};
    return true;
}

RasterImage AssetResolver::native(const Element& e, int dest_w, int dest_h) {
    if (!e.asset) return RasterImage::solid(dest_w, dest_h, default_fill(e.kind));
    RGBA color;
    if (parse_hex_color(*e.asset, color)) return RasterImage::solid(dest_w, dest_h, color);
    std::string path = *e.asset;
    if (!base_dir_.empty() && !path.empty() && path[0] != '/') path = base_dir_ + "/" + path;
    for (const auto& [key, img] : cache_)
        if (key == path) return img;
    RasterImage img;
    try {
        img = read_png(path);
    } catch (const Error& err) {
        if (err.code() == Errc::io_error)
            throw Error(Errc::missing_asset, "element \"" + e.id + "\": " + err.what());
        throw Error(Errc::decode_error, "element \"" + e.id + "\": " + err.what());
    }
    cache_.emplace_back(path, img);
    return img;
}

RasterImage composite(const RasterImage& canvas, const Layout& l, AssetResolver& assets) {
    require_valid(l);
    RasterImage out = canvas;
    for (const Element& e : l.elements) {
        Placement dest = pixel_rect(e.bbox, out.width, out.height);
        RasterImage src = assets.native(e, dest.w, dest.h);
        Placement p = place(src.width, src.height, e.bbox, out.width, out.height);
        RasterImage scaled = rescale_nearest(src, p.w, p.h);
        blend_over(out, scaled, p);
    }
    return out;
}

}  // namespace layr
