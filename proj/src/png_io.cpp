#include "png_io.hpp"

#include <zlib.h>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>

#include "error.hpp"

namespace layr {

namespace {

const std::uint8_t kSignature[8] = {137, 80, 78, 71, 13, 10, 26, 10};

std::uint32_t be32(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void push_be32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    v.push_back(std::uint8_t(x >> 24));
    v.push_back(std::uint8_t(x >> 16));
    v.push_back(std::uint8_t(x >> 8));
    v.push_back(std::uint8_t(x));
}

[[noreturn]] void fail(const std::string& what) {
    throw Error(Errc::decode_error, "png: " + what);
}

std::vector<std::uint8_t> inflate_all(const std::vector<std::uint8_t>& in, std::size_t expect) {
    std::vector<std::uint8_t> out(expect);
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK) fail("inflate init failed");
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&zs, Z_FINISH);
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || zs.total_out != expect) fail("corrupt compressed image data");
    return out;
}

int paeth(int a, int b, int c) {
    int p = a + b - c;
    int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

}  // namespace

RasterImage decode_png(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kSignature, 8) != 0)
        fail("bad signature");

    std::uint32_t width = 0, height = 0;
    int bit_depth = 0, color_type = 0, interlace = 0;
    std::vector<std::uint8_t> idat;
    std::vector<std::uint8_t> palette;   // rgb triplets
    std::vector<std::uint8_t> trns;      // palette alpha
    bool saw_ihdr = false, saw_iend = false;

    std::size_t pos = 8;
    while (pos + 12 <= bytes.size() && !saw_iend) {
        std::uint32_t len = be32(&bytes[pos]);
        if (pos + 12 + len > bytes.size()) fail("truncated chunk");
        const std::uint8_t* type = &bytes[pos + 4];
        const std::uint8_t* data = &bytes[pos + 8];
        std::uint32_t crc = be32(&bytes[pos + 8 + len]);
        std::uint32_t actual = crc32(crc32(0, type, 4), data, len);
        if (crc != actual) fail("chunk crc mismatch");

        if (!std::memcmp(type, "IHDR", 4)) {
            if (len != 13) fail("bad IHDR");
            width = be32(data);
            height = be32(data + 4);
            bit_depth = data[8];
            color_type = data[9];
            interlace = data[12];
            saw_ihdr = true;
        } else if (!std::memcmp(type, "PLTE", 4)) {
            palette.assign(data, data + len);
        } else if (!std::memcmp(type, "tRNS", 4)) {
            trns.assign(data, data + len);
        } else if (!std::memcmp(type, "IDAT", 4)) {
            idat.insert(idat.end(), data, data + len);
        } else if (!std::memcmp(type, "IEND", 4)) {
            saw_iend = true;
        }
        pos += 12 + len;
    }
    if (!saw_ihdr || !saw_iend) fail("missing IHDR or IEND");
    if (width == 0 || height == 0) fail("zero dimensions");
    if (width > 1u << 15 || height > 1u << 15) fail("image too large");
    if (bit_depth != 8) fail("unsupported bit depth (only 8 supported)");
    if (interlace != 0) fail("interlaced images not supported");

    int channels;
    switch (color_type) {
        case 0: channels = 1; break;  // gray
        case 2: channels = 3; break;  // rgb
        case 3: channels = 1; break;  // palette
        case 4: channels = 2; break;  // gray + alpha
        case 6: channels = 4; break;  // rgba
        default: fail("unsupported color type");
    }
    if (color_type == 3 && palette.empty()) fail("palette image without PLTE");

    std::size_t stride = static_cast<std::size_t>(width) * channels;
    std::vector<std::uint8_t> raw = inflate_all(idat, (stride + 1) * height);

    // Undo per-row filters in place.
    std::vector<std::uint8_t> prev(stride, 0);
    RasterImage img;
    img.width = static_cast<int>(width);
    img.height = static_cast<int>(height);
    img.pixels.resize(static_cast<std::size_t>(width) * height * 4);

    for (std::uint32_t y = 0; y < height; ++y) {
        std::uint8_t* row = &raw[(stride + 1) * y];
        int filter = row[0];
        std::uint8_t* cur = row + 1;
        for (std::size_t i = 0; i < stride; ++i) {
            int a = i >= static_cast<std::size_t>(channels) ? cur[i - channels] : 0;
            int b = prev[i];
            int c = i >= static_cast<std::size_t>(channels) ? prev[i - channels] : 0;
            int x = cur[i];
            switch (filter) {
                case 0: break;
                case 1: x += a; break;
                case 2: x += b; break;
                case 3: x += (a + b) / 2; break;
                case 4: x += paeth(a, b, c); break;
                default: fail("bad filter type");
            }
            cur[i] = static_cast<std::uint8_t>(x);
        }
        std::memcpy(prev.data(), cur, stride);

        std::uint8_t* out = img.at(0, static_cast<int>(y));
        for (std::uint32_t x = 0; x < width; ++x) {
            const std::uint8_t* s = cur + static_cast<std::size_t>(x) * channels;
            switch (color_type) {
                case 0: out[0] = out[1] = out[2] = s[0]; out[3] = 255; break;
                case 2: out[0] = s[0]; out[1] = s[1]; out[2] = s[2]; out[3] = 255; break;
                case 3: {
                    std::size_t idx = s[0];
                    if (idx * 3 + 2 >= palette.size()) fail("palette index out of range");
                    out[0] = palette[idx * 3];
                    out[1] = palette[idx * 3 + 1];
                    out[2] = palette[idx * 3 + 2];
                    out[3] = idx < trns.size() ? trns[idx] : 255;
                    break;
                }
                case 4: out[0] = out[1] = out[2] = s[0]; out[3] = s[1]; break;
                case 6: out[0] = s[0]; out[1] = s[1]; out[2] = s[2]; out[3] = s[3]; break;
            }
            out += 4;
        }
    }
    return img;
}

std::vector<std::uint8_t> encode_png(const RasterImage& img) {
    if (img.width <= 0 || img.height <= 0 ||
        img.pixels.size() != static_cast<std::size_t>(img.width) * img.height * 4)
        throw Error(Errc::decode_error, "png: invalid image buffer");

    std::size_t stride = static_cast<std::size_t>(img.width) * 4;
    std::vector<std::uint8_t> raw;
    raw.reserve((stride + 1) * img.height);
    for (int y = 0; y < img.height; ++y) {
        raw.push_back(0);  // filter: none
        const std::uint8_t* row = img.at(0, y);
        raw.insert(raw.end(), row, row + stride);
    }

    uLongf comp_cap = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> comp(comp_cap);
    if (compress2(comp.data(), &comp_cap, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
        throw Error(Errc::io_error, "png: compression failed");
    comp.resize(comp_cap);

    std::vector<std::uint8_t> out(kSignature, kSignature + 8);
    auto chunk = [&out](const char* type, const std::vector<std::uint8_t>& data) {
        push_be32(out, static_cast<std::uint32_t>(data.size()));
        std::size_t start = out.size();
        out.insert(out.end(), type, type + 4);
        out.insert(out.end(), data.begin(), data.end());
        std::uint32_t crc = crc32(0, out.data() + start, static_cast<uInt>(4 + data.size()));
        push_be32(out, crc);
    };

    std::vector<std::uint8_t> ihdr;
    push_be32(ihdr, static_cast<std::uint32_t>(img.width));
    push_be32(ihdr, static_cast<std::uint32_t>(img.height));
    ihdr.push_back(8);   // bit depth
    ihdr.push_back(6);   // color type: RGBA
    ihdr.push_back(0);   // compression
    ihdr.push_back(0);   // filter
    ihdr.push_back(0);   // interlace
    chunk("IHDR", ihdr);
    chunk("IDAT", comp);
    chunk("IEND", {});
    return out;
}

RasterImage read_png(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    try {
        return decode_png(bytes);
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

void write_png(const RasterImage& img, const std::string& path) {
    std::vector<std::uint8_t> bytes = encode_png(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::io_error, "write failed for " + path);
}

}  // namespace layr
