#pragma once

#include <string>
#include <vector>

#include "raster.hpp"

namespace layr {

struct Embedding {
    std::string id;
    std::vector<double> values;

    std::size_t dim() const { return values.size(); }
};

inline constexpr std::size_t kBaselineDim = 88;

// Deterministic image-statistics embedding: an 8x8 mean-pooled grayscale
// thumbnail (64 dims) concatenated with an 8-bin-per-channel RGB histogram
// (24 dims), L2-normalized. Stands in for learned encoders so the pipeline
// runs without model weights; precomputed vectors can be supplied instead
// via the embedding file.
Embedding embed_baseline(const RasterImage& img, std::string id);

double vector_norm(const std::vector<double>& v);
double cosine(const Embedding& a, const Embedding& b);

// Embedding file: one record per line, "<id>\t<v0>,<v1>,..." with the
// dimension fixed by the first line.
std::vector<Embedding> parse_embedding_file(const std::string& text);
std::vector<Embedding> read_embedding_file(const std::string& path);
std::string format_embedding_file(const std::vector<Embedding>& embeddings);
void write_embedding_file(const std::vector<Embedding>& embeddings, const std::string& path);

}  // namespace layr
