// Shared on-disk fixtures: synthetic canvases, corpora, and the refinement
// suite used by the pipeline and acceptance tests.
#pragma once

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "layout_io.hpp"
#include "pipeline.hpp"
#include "png_io.hpp"

namespace fixtures {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag = "layr") {
        path = fs::temp_directory_path() /
               (tag + "_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str(const std::string& rel) const { return (path / rel).string(); }
};

// Distinct, smooth backgrounds so baseline embeddings separate cleanly.
inline layr::RasterImage gradient_canvas(int w, int h, int tint) {
    layr::RasterImage img = layr::RasterImage::solid(w, h, {0, 0, 0, 255});
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::uint8_t* p = img.at(x, y);
            p[0] = static_cast<std::uint8_t>((x * 255 / std::max(1, w - 1) + tint * 37) % 256);
            p[1] = static_cast<std::uint8_t>((y * 255 / std::max(1, h - 1) + tint * 83) % 256);
            p[2] = static_cast<std::uint8_t>((tint * 53) % 256);
        }
    return img;
}

inline layr::Element el(std::string id, layr::ElementType k, layr::BBox b,
                        std::string asset = "") {
    layr::Element e;
    e.id = std::move(id);
    e.kind = k;
    e.bbox = b;
    if (!asset.empty()) e.asset = std::move(asset);
    return e;
}

struct CorpusSpec {
    std::string id;
    layr::Layout layout;
    int tint = 0;
};

// Writes canvases + layout files + manifest; returns the manifest path.
inline std::string write_corpus(const TempDir& tmp, const std::vector<CorpusSpec>& specs,
                                const std::string& manifest_name = "corpus.json") {
    nlohmann::json manifest = nlohmann::json::array();
    for (const CorpusSpec& s : specs) {
        std::string image_rel = s.id + ".png";
        std::string layout_rel = s.id + ".layout.json";
        layr::write_png(gradient_canvas(s.layout.canvas_w, s.layout.canvas_h, s.tint),
                        tmp.str(image_rel));
        layr::save_layout_file(s.layout, tmp.str(layout_rel));
        manifest.push_back({{"id", s.id}, {"image", image_rel}, {"layout", layout_rel}});
    }
    std::string path = tmp.str(manifest_name);
    layr::write_text_file(path, manifest.dump(2) + "\n");
    return path;
}

inline std::string write_test_manifest(const TempDir& tmp,
                                       const std::vector<CorpusSpec>& specs,
                                       const std::string& name = "test.json") {
    nlohmann::json manifest = nlohmann::json::array();
    for (const CorpusSpec& s : specs)
        manifest.push_back({{"id", s.id}, {"image", s.id + ".png"}});
    std::string path = tmp.str(name);
    layr::write_text_file(path, manifest.dump(2) + "\n");
    return path;
}

// One refinement-suite exemplar. The geometry is engineered so that:
//  - texts B-in-A and the C/D pair overlap, so gamma2 starts below 0.9;
//  - the minimal exit for B is +x, which lands it inside the underlay U;
//  - once B sits in U and C/D separate, gamma2 clears 0.9 and the grader
//    accepts.
// Whole clusters shift together, keeping that arithmetic intact per canvas.
inline layr::Layout loop_exemplar(double dx1, double dy1, double dx2, double dy2,
                                  int canvas_w, int canvas_h) {
    using layr::ElementType;
    layr::Layout l;
    l.canvas_w = canvas_w;
    l.canvas_h = canvas_h;
    l.elements = {
        el("u0", ElementType::underlay, {0.55 + dx1, 0.30 + dy1, 0.30, 0.40}, "#aab4c0"),
        el("t0", ElementType::text, {0.25 + dx1, 0.40 + dy1, 0.30, 0.20}, "#39424d"),
        el("t1", ElementType::text, {0.43 + dx1, 0.42 + dy1, 0.12, 0.16}, "#4d5866"),
        el("t2", ElementType::text, {0.10 + dx2, 0.70 + dy2, 0.20, 0.15}, "#2f3844"),
        el("t3", ElementType::text, {0.19 + dx2, 0.73 + dy2, 0.20, 0.15}, "#434e5c"),
    };
    return l;
}

struct LoopSuite {
    std::string corpus_manifest;
    std::string test_manifest;
    std::vector<std::string> ids;
};

// n canvases whose nearest exemplar is their own overlapping layout.
inline LoopSuite make_loop_suite(const TempDir& tmp, int n, std::uint64_t seed = 20250808) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> jitter(-2, 2);
    std::uniform_int_distribution<int> dims(240, 288);

    std::vector<CorpusSpec> specs;
    for (int i = 0; i < n; ++i) {
        double dx1 = jitter(rng) / 100.0, dy1 = jitter(rng) / 100.0;
        double dx2 = jitter(rng) / 100.0, dy2 = jitter(rng) / 100.0;
        CorpusSpec s;
        char id[16];
        std::snprintf(id, sizeof id, "cv%02d", i);
        s.id = id;
        s.layout = loop_exemplar(dx1, dy1, dx2, dy2, dims(rng), dims(rng));
        s.tint = i;
        specs.push_back(std::move(s));
    }
    LoopSuite suite;
    suite.corpus_manifest = write_corpus(tmp, specs);
    suite.test_manifest = write_test_manifest(tmp, specs);
    for (const CorpusSpec& s : specs) suite.ids.push_back(s.id);
    return suite;
}

// Config used with the refinement suite: a deliberately tiny search budget
// so the proposals stay overlapping and the grade/feedback loop does the
// repair work.
inline layr::PipelineConfig loop_config(std::uint64_t seed = 99) {
    layr::PipelineConfig cfg;
    cfg.k = 5;
    cfg.max_iterations = 3;
    cfg.rng_seed = seed;
    cfg.search.max_moves = 2;
    cfg.parallelism = 4;
    return cfg;
}

}  // namespace fixtures
