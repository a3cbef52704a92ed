// layr command-line tool. Drives the shared-library C API; the only other
// dependencies are the header-only CLI/JSON helpers used to merge config
// flags into the config document passed across the boundary.

#include <layr.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using nlohmann::json;

constexpr size_t kErrCap = 4096;

int finish(layr_status status, const char* err) {
    if (status == LAYR_ERROR) {
        std::cerr << "error: " << err << "\n";
        return 1;
    }
    if (status == LAYR_PARTIAL) {
        std::cerr << "warning: partial ingest: " << err << "\n";
        return 2;
    }
    return 0;
}

struct ConfigFlags {
    std::string config_path;
    int k = 0;
    double alpha_overlap = -1, alpha_alignment = -1, alpha_margins = -1, margin = -1;
    double t1 = -1, t2 = -1, t3 = -1;
    int max_iterations = 0;
    std::vector<double> omega;
    std::string external_url;
    int timeout_ms = 0;
    std::uint64_t rng_seed = 0;
    int occlusion_grid = 0;
    int parallelism = 0;
    int max_moves = 0;
    bool return_best = false;

    CLI::Option* seed_opt = nullptr;
    CLI::Option* best_opt = nullptr;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
    cmd->add_option("--config", f.config_path, "Pipeline config JSON file");
    cmd->add_option("--k", f.k, "Retrieval depth");
    cmd->add_option("--alpha-overlap", f.alpha_overlap, "Overlap cost weight");
    cmd->add_option("--alpha-alignment", f.alpha_alignment, "Alignment cost weight");
    cmd->add_option("--alpha-margins", f.alpha_margins, "Margin cost weight");
    cmd->add_option("--margin", f.margin, "Minimum spacing (normalized units)");
    cmd->add_option("--t1", f.t1, "Color cohesion threshold");
    cmd->add_option("--t2", f.t2, "Spacing threshold");
    cmd->add_option("--t3", f.t3, "Visibility threshold");
    cmd->add_option("--max-iterations", f.max_iterations, "Generate/grade/refine rounds");
    cmd->add_option("--omega", f.omega, "Protected region x y w h")->expected(4);
    cmd->add_option("--external-url", f.external_url, "External recommender endpoint");
    cmd->add_option("--timeout-ms", f.timeout_ms, "External recommender timeout");
    f.seed_opt = cmd->add_option("--rng-seed", f.rng_seed, "Search RNG seed");
    cmd->add_option("--occlusion-grid", f.occlusion_grid, "Occlusion grid resolution");
    cmd->add_option("--parallelism", f.parallelism, "Concurrent pipelines");
    cmd->add_option("--max-moves", f.max_moves, "Local search move budget");
    f.best_opt = cmd->add_flag("--return-best", f.return_best,
                               "Return the best-graded layout on exhaustion");
}

// File config first, explicit flags on top.
std::string merge_config(const ConfigFlags& f) {
    json j = json::object();
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw CLI::ValidationError("--config", "cannot open " + f.config_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        j = json::parse(ss.str());  // let parse errors surface as exceptions
    }
    if (f.k > 0) j["k"] = f.k;
    if (f.alpha_overlap >= 0) j["weights"]["alpha_overlap"] = f.alpha_overlap;
    if (f.alpha_alignment >= 0) j["weights"]["alpha_alignment"] = f.alpha_alignment;
    if (f.alpha_margins >= 0) j["weights"]["alpha_margins"] = f.alpha_margins;
    if (f.margin >= 0) j["weights"]["margin"] = f.margin;
    if (f.t1 >= 0) j["thresholds"]["t1"] = f.t1;
    if (f.t2 >= 0) j["thresholds"]["t2"] = f.t2;
    if (f.t3 >= 0) j["thresholds"]["t3"] = f.t3;
    if (f.max_iterations > 0) j["max_iterations"] = f.max_iterations;
    if (f.omega.size() == 4) j["omega"] = f.omega;
    if (!f.external_url.empty()) {
        j["external_recommender"]["url"] = f.external_url;
        if (f.timeout_ms > 0) j["external_recommender"]["timeout_ms"] = f.timeout_ms;
    }
    if (f.seed_opt && f.seed_opt->count() > 0) j["rng_seed"] = f.rng_seed;
    if (f.occlusion_grid > 0) j["occlusion_grid"] = f.occlusion_grid;
    if (f.parallelism > 0) j["parallelism"] = f.parallelism;
    if (f.max_moves > 0) j["search"]["max_moves"] = f.max_moves;
    if (f.best_opt && f.best_opt->count() > 0) j["return_best"] = f.return_best;
    return j.dump();
}

using StorePtr = std::unique_ptr<layr_store, decltype(&layr_store_close)>;

int open_store(const std::string& index, const std::string& corpus, StorePtr& store,
               char* err) {
    layr_store* raw = nullptr;
    layr_status st = layr_store_open(index.c_str(), corpus.empty() ? nullptr : corpus.c_str(),
                                     &raw, err, kErrCap);
    store = StorePtr(raw, &layr_store_close);
    return finish(st, err);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"content-aware layout generation engine"};
    app.require_subcommand(1);
    char err[kErrCap] = {0};

    // index build
    CLI::App* index = app.add_subcommand("index", "Corpus index maintenance");
    index->require_subcommand(1);
    CLI::App* build = index->add_subcommand("build", "Embed a corpus and write its index");
    std::string build_corpus, build_embeddings, build_out;
    build->add_option("--corpus", build_corpus, "Corpus manifest JSON")->required();
    build->add_option("--embeddings", build_embeddings, "Precomputed embedding file (TSV)");
    build->add_option("--out", build_out, "Output index path")->required();

    // generate
    CLI::App* generate = app.add_subcommand("generate", "Generate a layout for a canvas");
    std::string gen_canvas, gen_index, gen_corpus, gen_out;
    ConfigFlags gen_cfg;
    generate->add_option("--canvas", gen_canvas, "Canvas PNG")->required();
    generate->add_option("--index", gen_index, "Index file")->required();
    generate->add_option("--corpus", gen_corpus, "Corpus manifest (overrides snapshot)");
    generate->add_option("--out-dir", gen_out, "Output directory")->required();
    add_config_flags(generate, gen_cfg);

    // evaluate
    CLI::App* evaluate = app.add_subcommand("evaluate", "Score a manifest of layouts");
    std::string eval_layouts, eval_out;
    evaluate->add_option("--layouts", eval_layouts, "Layout manifest JSON")->required();
    evaluate->add_option("--out", eval_out, "Output directory")->required();

    // composite
    CLI::App* comp = app.add_subcommand("composite", "Render a layout onto a canvas");
    std::string comp_layout, comp_canvas, comp_out;
    comp->add_option("--layout", comp_layout, "Layout JSON")->required();
    comp->add_option("--canvas", comp_canvas, "Canvas PNG")->required();
    comp->add_option("--out", comp_out, "Output PNG")->required();

    // experiment
    CLI::App* experiment = app.add_subcommand("experiment", "Run the pipeline over a test set");
    std::string exp_test, exp_index, exp_corpus, exp_out;
    bool exp_ablation = false;
    ConfigFlags exp_cfg;
    experiment->add_option("--test", exp_test, "Test manifest JSON")->required();
    experiment->add_option("--index", exp_index, "Index file")->required();
    experiment->add_option("--corpus", exp_corpus, "Corpus manifest (overrides snapshot)");
    experiment->add_flag("--ablation", exp_ablation, "Also run ablation configurations");
    experiment->add_option("--out", exp_out, "Output directory")->required();
    add_config_flags(experiment, exp_cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) {
            layr_status st = layr_index_build(
                build_corpus.c_str(),
                build_embeddings.empty() ? nullptr : build_embeddings.c_str(),
                build_out.c_str(), err, kErrCap);
            return finish(st, err);
        }
        if (generate->parsed()) {
            StorePtr store(nullptr, &layr_store_close);
            int rc = open_store(gen_index, gen_corpus, store, err);
            if (rc != 0) return rc;
            std::string cfg = merge_config(gen_cfg);
            return finish(layr_generate(store.get(), gen_canvas.c_str(), cfg.c_str(),
                                        gen_out.c_str(), err, kErrCap),
                          err);
        }
        if (evaluate->parsed()) {
            return finish(layr_evaluate(eval_layouts.c_str(), eval_out.c_str(), err, kErrCap),
                          err);
        }
        if (comp->parsed()) {
            return finish(layr_composite(comp_layout.c_str(), comp_canvas.c_str(),
                                         comp_out.c_str(), err, kErrCap),
                          err);
        }
        if (experiment->parsed()) {
            StorePtr store(nullptr, &layr_store_close);
            int rc = open_store(exp_index, exp_corpus, store, err);
            if (rc != 0) return rc;
            std::string cfg = merge_config(exp_cfg);
            return finish(layr_experiment(store.get(), exp_test.c_str(), cfg.c_str(),
                                          exp_ablation ? 1 : 0, exp_out.c_str(), err, kErrCap),
                          err);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
