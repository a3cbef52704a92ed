#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "raster.hpp"

namespace layr {

// Minimal PNG codec on top of zlib.
// Decodes non-interlaced 8-bit images (gray, gray+alpha, RGB, RGBA, palette)
// into straight-alpha RGBA8. Encodes RGBA8, color type 6, filter 0.
RasterImage decode_png(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_png(const RasterImage& img);

RasterImage read_png(const std::string& path);
void write_png(const RasterImage& img, const std::string& path);

}  // namespace layr
