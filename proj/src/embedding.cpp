#include "embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <unordered_set>

#include "layout_io.hpp"

namespace layr {

Embedding embed_baseline(const RasterImage& img, std::string id) {
    if (img.width <= 0 || img.height <= 0)
        throw Error(Errc::decode_error, "embed: empty image");

    std::vector<double> v;
    v.reserve(kBaselineDim);

    // 8x8 mean-pooled grayscale thumbnail, cells on floor boundaries.
    for (int cy = 0; cy < 8; ++cy) {
        int y0 = cy * img.height / 8;
        int y1 = std::max(y0 + 1, (cy + 1) * img.height / 8);
        y1 = std::min(y1, img.height);
        for (int cx = 0; cx < 8; ++cx) {
            int x0 = cx * img.width / 8;
            int x1 = std::max(x0 + 1, (cx + 1) * img.width / 8);
            x1 = std::min(x1, img.width);
            double sum = 0.0;
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x) {
                    const std::uint8_t* p = img.at(x, y);
                    sum += 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
                }
            v.push_back(sum / (255.0 * (y1 - y0) * (x1 - x0)));
        }
    }

    // 8-bin-per-channel RGB histogram, normalized by pixel count.
    double hist[24] = {0};
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const std::uint8_t* p = img.at(x, y);
            for (int c = 0; c < 3; ++c) hist[c * 8 + (p[c] >> 5)] += 1.0;
        }
    double count = static_cast<double>(img.width) * img.height;
    for (double h : hist) v.push_back(h / count);

    Embedding e{std::move(id), std::move(v)};
    double norm = vector_norm(e.values);
    if (norm <= 0.0) throw Error(Errc::zero_norm, "embed: zero-norm vector");
    for (double& x : e.values) x /= norm;
    return e;
}

double vector_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double cosine(const Embedding& a, const Embedding& b) {
    if (a.dim() != b.dim())
        throw Error(Errc::dimension_mismatch,
                    "cosine: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()) + ")");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        dot += a.values[i] * b.values[i];
        na += a.values[i] * a.values[i];
        nb += b.values[i] * b.values[i];
    }
    if (na <= 0.0 || nb <= 0.0) throw Error(Errc::zero_norm, "cosine: zero-norm vector");
    double s = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::clamp(s, -1.0, 1.0);
}

std::vector<Embedding> parse_embedding_file(const std::string& text) {
    std::vector<Embedding> out;
    std::unordered_set<std::string> seen;
    std::size_t dim = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        ++line_no;
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw Error(Errc::parse_error,
                        "embedding file line " + std::to_string(line_no) + ": expected <id>\\t<floats>");
        Embedding e;
        e.id = line.substr(0, tab);
        if (!seen.insert(e.id).second)
            throw Error(Errc::duplicate_id, "embedding file: duplicate id \"" + e.id + "\"");

        const char* s = line.c_str() + tab + 1;
        while (*s) {
            char* end = nullptr;
            double val = std::strtod(s, &end);
            if (end == s)
                throw Error(Errc::parse_error,
                            "embedding file line " + std::to_string(line_no) + ": bad float");
            if (!std::isfinite(val))
                throw Error(Errc::parse_error,
                            "embedding file line " + std::to_string(line_no) + ": non-finite value");
            e.values.push_back(val);
            s = end;
            if (*s == ',') ++s;
        }
        if (e.values.empty())
            throw Error(Errc::parse_error,
                        "embedding file line " + std::to_string(line_no) + ": empty vector");
        if (dim == 0) {
            dim = e.values.size();
        } else if (e.values.size() != dim) {
            throw Error(Errc::dimension_mismatch,
                        "embedding file line " + std::to_string(line_no) + ": dimension " +
                            std::to_string(e.values.size()) + " != " + std::to_string(dim));
        }
        if (vector_norm(e.values) <= 0.0)
            throw Error(Errc::zero_norm, "embedding file: zero-norm vector for \"" + e.id + "\"");
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<Embedding> read_embedding_file(const std::string& path) {
    return parse_embedding_file(read_text_file(path));
}

std::string format_embedding_file(const std::vector<Embedding>& embeddings) {
    std::string out;
    char buf[40];
    for (const Embedding& e : embeddings) {
        out += e.id;
        out += '\t';
        for (std::size_t i = 0; i < e.values.size(); ++i) {
            if (i) out += ',';
            std::snprintf(buf, sizeof buf, "%.17g", e.values[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void write_embedding_file(const std::vector<Embedding>& embeddings, const std::string& path) {
    write_text_file(path, format_embedding_file(embeddings));
}

}  // namespace layr
