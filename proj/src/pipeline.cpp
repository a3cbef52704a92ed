#include "pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <set>
#include <thread>

#include "layout_io.hpp"
#include "png_io.hpp"

namespace layr {

using nlohmann::json;
namespace fs = std::filesystem;

void validate_config(const PipelineConfig& cfg) {
    if (cfg.k < 1) throw Error(Errc::bad_config, "k must be >= 1");
    if (cfg.max_iterations < 1) throw Error(Errc::bad_config, "max_iterations must be >= 1");
    if (cfg.occlusion_grid < 8 || cfg.occlusion_grid > 4096)
        throw Error(Errc::bad_config, "occlusion_grid must be in [8, 4096]");
    if (cfg.parallelism < 1) throw Error(Errc::bad_config, "parallelism must be >= 1");
    validate_weights(cfg.weights);
    validate_thresholds(cfg.thresholds);
    validate_budget(cfg.search);
    if (cfg.omega && !bbox_valid(cfg.omega->region))
        throw Error(Errc::bad_config, "omega must be a valid normalized box");
    if (cfg.external_recommender && cfg.external_recommender->url.empty())
        throw Error(Errc::bad_config, "external recommender needs a url");
}

PipelineConfig config_from_json(const json& j) {
    if (!j.is_object()) throw Error(Errc::bad_config, "config must be a JSON object");
    static const char* known[] = {"k", "weights", "thresholds", "max_iterations", "omega",
                                  "external_recommender", "rng_seed", "occlusion_grid",
                                  "parallelism", "search", "return_best"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* key : known) ok = ok || it.key() == key;
        if (!ok) throw Error(Errc::bad_config, "unknown config key \"" + it.key() + "\"");
    }

    PipelineConfig cfg;
    try {
        cfg.k = j.value("k", cfg.k);
        cfg.max_iterations = j.value("max_iterations", cfg.max_iterations);
        cfg.rng_seed = j.value("rng_seed", cfg.rng_seed);
        cfg.occlusion_grid = j.value("occlusion_grid", cfg.occlusion_grid);
        cfg.parallelism = j.value("parallelism", cfg.parallelism);
        cfg.return_best = j.value("return_best", cfg.return_best);
        if (j.contains("weights")) {
            const json& w = j["weights"];
            cfg.weights.alpha_overlap = w.value("alpha_overlap", cfg.weights.alpha_overlap);
            cfg.weights.alpha_alignment = w.value("alpha_alignment", cfg.weights.alpha_alignment);
            cfg.weights.alpha_margins = w.value("alpha_margins", cfg.weights.alpha_margins);
            cfg.weights.margin = w.value("margin", cfg.weights.margin);
        }
        if (j.contains("thresholds")) {
            const json& t = j["thresholds"];
            cfg.thresholds.t1 = t.value("t1", cfg.thresholds.t1);
            cfg.thresholds.t2 = t.value("t2", cfg.thresholds.t2);
            cfg.thresholds.t3 = t.value("t3", cfg.thresholds.t3);
        }
        if (j.contains("omega") && !j["omega"].is_null()) {
            const json& o = j["omega"];
            if (!o.is_array() || o.size() != 4)
                throw Error(Errc::bad_config, "omega must be [x, y, w, h]");
            cfg.omega = ProtectedRegion{BBox{o[0].get<double>(), o[1].get<double>(),
                                             o[2].get<double>(), o[3].get<double>()}};
        }
        if (j.contains("external_recommender") && !j["external_recommender"].is_null()) {
            const json& e = j["external_recommender"];
            EndpointConfig ep;
            ep.url = e.value("url", std::string());
            ep.timeout_ms = e.value("timeout_ms", ep.timeout_ms);
            cfg.external_recommender = ep;
        }
        if (j.contains("search")) {
            const json& s = j["search"];
            cfg.search.max_moves = s.value("max_moves", cfg.search.max_moves);
            if (s.contains("step_sizes"))
                cfg.search.step_sizes = s["step_sizes"].get<std::vector<double>>();
        }
    } catch (const json::exception& e) {
        throw Error(Errc::bad_config, std::string("config: ") + e.what());
    }
    validate_config(cfg);
    return cfg;
}

json config_to_json(const PipelineConfig& cfg) {
    json j;
    j["k"] = cfg.k;
    j["weights"] = {{"alpha_overlap", cfg.weights.alpha_overlap},
                    {"alpha_alignment", cfg.weights.alpha_alignment},
                    {"alpha_margins", cfg.weights.alpha_margins},
                    {"margin", cfg.weights.margin}};
    j["thresholds"] = {{"t1", cfg.thresholds.t1},
                       {"t2", cfg.thresholds.t2},
                       {"t3", cfg.thresholds.t3}};
    j["max_iterations"] = cfg.max_iterations;
    j["omega"] = cfg.omega ? json{cfg.omega->region.x, cfg.omega->region.y,
                                  cfg.omega->region.w, cfg.omega->region.h}
                           : json(nullptr);
    j["external_recommender"] =
        cfg.external_recommender
            ? json{{"url", cfg.external_recommender->url},
                   {"timeout_ms", cfg.external_recommender->timeout_ms}}
            : json(nullptr);
    j["rng_seed"] = cfg.rng_seed;
    j["occlusion_grid"] = cfg.occlusion_grid;
    j["parallelism"] = cfg.parallelism;
    j["search"] = {{"max_moves", cfg.search.max_moves}, {"step_sizes", cfg.search.step_sizes}};
    j["return_best"] = cfg.return_best;
    return j;
}

json trace_to_json(const RunTrace& t) {
    json iterations = json::array();
    for (std::size_t i = 0; i < t.iterations.size(); ++i) {
        const IterationRecord& r = t.iterations[i];
        json deltas = json::array();
        for (const Delta& d : r.plan.deltas)
            deltas.push_back(json{{"element_id", d.element_id},
                                  {"dx", d.dx},
                                  {"dy", d.dy},
                                  {"dw", d.dw},
                                  {"dh", d.dh},
                                  {"reason", to_string(d.reason)}});
        iterations.push_back(
            json{{"iteration", i + 1},
                 {"layout", layout_to_json(r.layout)},
                 {"cost",
                  {{"c_overlap", r.cost.c_overlap},
                   {"c_alignment", r.cost.c_alignment},
                   {"c_margins", r.cost.c_margins},
                   {"total", r.cost.total}}},
                 {"grade",
                  {{"gamma1", r.report.gamma1},
                   {"gamma2", r.report.gamma2},
                   {"gamma3", r.report.gamma3},
                   {"thresholds",
                    {r.report.thresholds.t1, r.report.thresholds.t2, r.report.thresholds.t3}},
                   {"passes", {r.report.passes[0], r.report.passes[1], r.report.passes[2]}},
                   {"decision", r.report.accepted ? "accept" : "reject"}}},
                 {"feedback",
                  {{"uncorrectable_color", r.plan.uncorrectable_color}, {"deltas", deltas}}}});
    }
    json out;
    out["status"] = t.status == RunStatus::accepted ? "accepted" : "exhausted";
    out["accepted_at"] = t.accepted_at > 0 ? json(t.accepted_at) : json(nullptr);
    out["used_external"] = t.used_external;
    out["external_fallback"] = t.external_fallback;
    out["fallback_reason"] =
        t.fallback_reason.empty() ? json(nullptr) : json(t.fallback_reason);
    out["iterations"] = std::move(iterations);
    return out;
}

namespace {

SearchBudget seeded_budget(const PipelineConfig& cfg, std::uint64_t salt) {
    SearchBudget b = cfg.search;
    b.rng_seed = cfg.rng_seed + salt;
    return b;
}

const ProtectedRegion* omega_ptr(const PipelineConfig& cfg) {
    return cfg.omega ? &*cfg.omega : nullptr;
}

double min_margin(const GraderReport& r) {
    return std::min({r.gamma1 - r.thresholds.t1, r.gamma2 - r.thresholds.t2,
                     r.gamma3 - r.thresholds.t3});
}

Layout propose(const RasterImage& canvas, const CorpusStore& store, const PipelineConfig& cfg,
               RunTrace& trace) {
    Embedding q = embed_baseline(canvas, "query");
    std::vector<const CorpusEntry*> retrieved = store.topk(q, cfg.k);
    if (cfg.external_recommender) {
        trace.used_external = true;
        ProposalRequest req;
        req.canvas_w = canvas.width;
        req.canvas_h = canvas.height;
        for (const CorpusEntry* e : retrieved) req.examples.push_back(&e->layout);
        req.instructions = default_instructions();
        ProposalOutcome out = external_propose(req, *cfg.external_recommender, retrieved,
                                               cfg.weights, seeded_budget(cfg, 0),
                                               omega_ptr(cfg));
        trace.external_fallback = out.fallback;
        trace.fallback_reason = out.fallback_reason;
        return out.layout;
    }
    return local_search(propose_initial(canvas.width, canvas.height, retrieved), cfg.weights,
                        seeded_budget(cfg, 0), omega_ptr(cfg));
}

PipelineResult run_full(const RasterImage& canvas, const CorpusStore& store,
                        const PipelineConfig& cfg, const std::string& asset_base_dir) {
    PipelineResult result;
    Layout layout = propose(canvas, store, cfg, result.trace);
    AssetResolver assets(asset_base_dir);

    RasterImage comp;
    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        auto t0 = std::chrono::steady_clock::now();
        comp = composite(canvas, layout, assets);
        GraderReport report = grade(layout, comp, cfg.thresholds, cfg.occlusion_grid);
        CostBreakdown cb = cost_unchecked(layout, cfg.weights, omega_ptr(cfg));

        IterationRecord rec{layout, cb, report, FeedbackPlan{}, 0.0};
        if (report.accepted) {
            rec.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
            result.trace.iterations.push_back(std::move(rec));
            result.trace.status = RunStatus::accepted;
            result.trace.accepted_at = iter;
            result.layout = layout;
            result.composite_image = std::move(comp);
            return result;
        }
        FeedbackPlan plan = feedback(layout, report, omega_ptr(cfg));
        rec.plan = plan;
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        result.trace.iterations.push_back(std::move(rec));
        layout = refine(layout, plan, cfg.weights, seeded_budget(cfg, iter), omega_ptr(cfg));
    }

    result.trace.status = RunStatus::exhausted;
    if (cfg.return_best && !result.trace.iterations.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < result.trace.iterations.size(); ++i)
            if (min_margin(result.trace.iterations[i].report) >
                min_margin(result.trace.iterations[best].report))
                best = i;
        layout = result.trace.iterations[best].layout;
    }
    result.layout = layout;
    result.composite_image = composite(canvas, layout, assets);
    return result;
}

PipelineResult run_recommender_only(const RasterImage& canvas, const CorpusStore& store,
                                    const PipelineConfig& cfg,
                                    const std::string& asset_base_dir) {
    PipelineResult result;
    result.layout = propose(canvas, store, cfg, result.trace);
    AssetResolver assets(asset_base_dir);
    result.composite_image = composite(canvas, result.layout, assets);
    result.trace.status = RunStatus::exhausted;
    return result;
}

// Grader-gated re-proposal: draw from the next-ranked exemplar instead of
// refining, keep the first accepted layout or the best-margin candidate.
PipelineResult run_grader_only(const RasterImage& canvas, const CorpusStore& store,
                               const PipelineConfig& cfg, const std::string& asset_base_dir) {
    PipelineResult result;
    Embedding q = embed_baseline(canvas, "query");
    int depth = std::max(cfg.k, cfg.max_iterations);
    std::vector<const CorpusEntry*> retrieved = store.topk(q, depth);
    AssetResolver assets(asset_base_dir);

    Layout final_layout;
    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        if (static_cast<std::size_t>(iter) > retrieved.size()) break;
        std::vector<const CorpusEntry*> ranked(retrieved.begin() + (iter - 1), retrieved.end());
        Layout candidate =
            local_search(propose_initial(canvas.width, canvas.height, ranked), cfg.weights,
                         seeded_budget(cfg, static_cast<std::uint64_t>(iter - 1)),
                         omega_ptr(cfg));
        RasterImage comp = composite(canvas, candidate, assets);
        GraderReport report = grade(candidate, comp, cfg.thresholds, cfg.occlusion_grid);
        CostBreakdown cb = cost_unchecked(candidate, cfg.weights, omega_ptr(cfg));
        result.trace.iterations.push_back({candidate, cb, report, FeedbackPlan{}, 0.0});
        if (report.accepted) {
            result.trace.status = RunStatus::accepted;
            result.trace.accepted_at = iter;
            result.layout = candidate;
            result.composite_image = std::move(comp);
            return result;
        }
    }
    if (result.trace.iterations.empty())
        throw Error(Errc::empty_retrieval, "no exemplars available for re-proposal");
    std::size_t best = 0;
    for (std::size_t i = 1; i < result.trace.iterations.size(); ++i)
        if (min_margin(result.trace.iterations[i].report) >
            min_margin(result.trace.iterations[best].report))
            best = i;
    result.trace.status = RunStatus::exhausted;
    result.layout = result.trace.iterations[best].layout;
    result.composite_image = composite(canvas, result.layout, assets);
    return result;
}

}  // namespace

PipelineResult run_pipeline(const RasterImage& canvas, const CorpusStore& store,
                            const PipelineConfig& cfg, const std::string& asset_base_dir) {
    return run_pipeline_mode(canvas, store, cfg, PipelineMode::full, asset_base_dir);
}

PipelineResult run_pipeline_mode(const RasterImage& canvas, const CorpusStore& store,
                                 const PipelineConfig& cfg, PipelineMode mode,
                                 const std::string& asset_base_dir) {
    validate_config(cfg);
    if (store.entries.empty()) throw Error(Errc::empty_corpus, "pipeline: empty corpus");
    if (canvas.width <= 0 || canvas.height <= 0)
        throw Error(Errc::decode_error, "pipeline: empty canvas image");
    switch (mode) {
        case PipelineMode::full: return run_full(canvas, store, cfg, asset_base_dir);
        case PipelineMode::recommender_only:
            return run_recommender_only(canvas, store, cfg, asset_base_dir);
        case PipelineMode::grader_only:
            return run_grader_only(canvas, store, cfg, asset_base_dir);
    }
    throw Error(Errc::bad_config, "unknown pipeline mode");
}

namespace {

json parse_manifest(const std::string& manifest_path) {
    if (!fs::exists(manifest_path))
        throw Error(Errc::manifest_not_found, "manifest not found: " + manifest_path);
    json j;
    try {
        j = json::parse(read_text_file(manifest_path));
    } catch (const json::parse_error& e) {
        throw Error(Errc::parse_error, manifest_path + ": " + e.what());
    }
    if (!j.is_array())
        throw Error(Errc::parse_error, manifest_path + ": manifest must be a JSON array");
    return j;
}

}  // namespace

IngestResult ingest_corpus(const std::string& manifest_path,
                           const std::map<std::string, Embedding>* precomputed) {
    json j = parse_manifest(manifest_path);
    std::string base = path_parent(manifest_path);

    IngestResult out;
    std::set<std::string> seen;
    std::size_t item = 0;
    for (const json& je : j) {
        ++item;
        std::string id = je.is_object() ? je.value("id", std::string()) : std::string();
        if (id.empty()) {
            out.failures.push_back({"#" + std::to_string(item), "entry is missing an id"});
            continue;
        }
        if (!seen.insert(id).second) {
            out.failures.push_back({id, "duplicate corpus id"});
            continue;
        }
        try {
            if (!je.contains("layout") || !je["layout"].is_string())
                throw Error(Errc::parse_error, "entry needs a layout path");
            std::string layout_path = path_join(base, je["layout"].get<std::string>());
            Layout layout = load_layout_file(layout_path);
            auto violations = validate_layout(layout);
            if (!layout_ok(violations)) {
                std::string msg = "layout invalid:";
                for (const Violation& v : violations)
                    if (v.is_error) msg += " " + v.message + ";";
                throw Error(Errc::invalid_layout, msg);
            }
            rebase_assets(layout, path_parent(layout_path));

            std::string image = je.value("image", std::string());
            std::string image_path = image.empty() ? "" : path_join(base, image);

            Embedding emb;
            if (precomputed && precomputed->count(id)) {
                emb = precomputed->at(id);
                emb.id = id;
            } else {
                if (image_path.empty())
                    throw Error(Errc::parse_error,
                                "entry has no image and no precomputed embedding");
                emb = embed_baseline(read_png(image_path), id);
            }
            out.entries.push_back(CorpusEntry{id, image_path, std::move(layout), std::move(emb)});
        } catch (const Error& e) {
            out.failures.push_back({id, e.what()});
        }
    }
    return out;
}

TestSuite load_test_manifest(const std::string& manifest_path) {
    json j = parse_manifest(manifest_path);
    std::string base = path_parent(manifest_path);
    TestSuite out;
    std::set<std::string> seen;
    std::size_t item = 0;
    for (const json& je : j) {
        ++item;
        std::string id = je.is_object() ? je.value("id", std::string()) : std::string();
        if (id.empty()) {
            out.failures.push_back({"#" + std::to_string(item), "entry is missing an id"});
            continue;
        }
        if (!seen.insert(id).second) {
            out.failures.push_back({id, "duplicate test id"});
            continue;
        }
        if (!je.contains("image") || !je["image"].is_string()) {
            out.failures.push_back({id, "entry needs an image path"});
            continue;
        }
        out.canvases.push_back({id, path_join(base, je["image"].get<std::string>())});
    }
    return out;
}

ExperimentResult run_suite(const TestSuite& suite, const CorpusStore& store,
                           const PipelineConfig& cfg, PipelineMode mode) {
    validate_config(cfg);
    const std::size_t n = suite.canvases.size();

    struct Slot {
        bool ok = false;
        std::string error;
        PipelineResult result;
    };
    std::vector<Slot> slots(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            const TestCanvas& tc = suite.canvases[i];
            try {
                RasterImage canvas = read_png(tc.image_path);
                slots[i].result =
                    run_pipeline_mode(canvas, store, cfg, mode, path_parent(tc.image_path));
                slots[i].ok = true;
            } catch (const Error& e) {
                slots[i].error = e.what();
            } catch (const std::exception& e) {
                slots[i].error = e.what();
            }
        }
    };
    std::size_t threads_n = std::min<std::size_t>(std::max(cfg.parallelism, 1), std::max<std::size_t>(n, 1));
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < threads_n; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();

    ExperimentResult out;
    out.failures = suite.failures;
    std::vector<std::pair<std::string, Layout>> evaluated;
    for (std::size_t i = 0; i < n; ++i) {
        const TestCanvas& tc = suite.canvases[i];
        if (!slots[i].ok) {
            out.failures.push_back({tc.id, slots[i].error});
            continue;
        }
        evaluated.emplace_back(tc.id, slots[i].result.layout);
        out.traces.emplace_back(tc.id, std::move(slots[i].result.trace));
        out.layouts.emplace_back(tc.id, std::move(slots[i].result.layout));
    }
    auto by_id = [](const auto& a, const auto& b) { return a.first < b.first; };
    std::sort(out.traces.begin(), out.traces.end(), by_id);
    std::sort(out.layouts.begin(), out.layouts.end(), by_id);
    out.report = evaluate_corpus(evaluated);
    return out;
}

void write_experiment_outputs(const ExperimentResult& result, const std::string& out_dir) {
    fs::create_directories(out_dir);
    fs::create_directories(out_dir + "/traces");
    fs::create_directories(out_dir + "/layouts");
    write_text_file(out_dir + "/report.csv", corpus_report_csv(result.report));
    write_text_file(out_dir + "/report.json", corpus_report_json(result.report).dump(2) + "\n");
    for (const auto& [id, trace] : result.traces)
        write_text_file(out_dir + "/traces/" + id + ".trace.json",
                        trace_to_json(trace).dump(2) + "\n");
    for (const auto& [id, layout] : result.layouts)
        save_layout_file(layout, out_dir + "/layouts/" + id + ".layout.json");
}

CommandStatus cmd_index_build(const std::string& corpus_manifest,
                              const std::string& embeddings_tsv, const std::string& out_path) {
    std::map<std::string, Embedding> precomputed;
    if (!embeddings_tsv.empty())
        for (Embedding& e : read_embedding_file(embeddings_tsv)) {
            std::string id = e.id;
            precomputed.emplace(std::move(id), std::move(e));
        }
    IngestResult ingest = ingest_corpus(corpus_manifest,
                                        embeddings_tsv.empty() ? nullptr : &precomputed);
    if (ingest.entries.empty())
        throw Error(Errc::empty_corpus, "index build: no usable corpus entries");
    CorpusStore store = make_store(std::move(ingest.entries));
    save_store(store, out_path);
    return {static_cast<int>(store.entries.size()), static_cast<int>(ingest.failures.size()),
            ingest.failures};
}

void cmd_generate(const CorpusStore& store, const std::string& canvas_png,
                  const PipelineConfig& cfg, const std::string& out_dir) {
    RasterImage canvas = read_png(canvas_png);
    PipelineResult result = run_pipeline(canvas, store, cfg, path_parent(canvas_png));
    fs::create_directories(out_dir);
    save_layout_file(result.layout, out_dir + "/layout.json");
    write_png(result.composite_image, out_dir + "/composite.png");
    write_text_file(out_dir + "/trace.json", trace_to_json(result.trace).dump(2) + "\n");
}

void cmd_composite(const std::string& layout_json, const std::string& canvas_png,
                   const std::string& out_png) {
    Layout layout = load_layout_file(layout_json);
    require_valid(layout);
    RasterImage canvas = read_png(canvas_png);
    AssetResolver assets(path_parent(layout_json));
    write_png(composite(canvas, layout, assets), out_png);
}

CommandStatus cmd_evaluate(const std::string& layouts_manifest, const std::string& out_dir) {
    json j = parse_manifest(layouts_manifest);
    std::string base = path_parent(layouts_manifest);

    CommandStatus status;
    std::vector<std::pair<std::string, Layout>> layouts;
    std::size_t item = 0;
    for (const json& je : j) {
        ++item;
        std::string id = je.is_object() ? je.value("id", std::string()) : std::string();
        if (id.empty()) {
            status.failures.push_back({"#" + std::to_string(item), "entry is missing an id"});
            continue;
        }
        try {
            if (!je.contains("layout") || !je["layout"].is_string())
                throw Error(Errc::parse_error, "entry needs a layout path");
            Layout l = load_layout_file(path_join(base, je["layout"].get<std::string>()));
            require_valid(l);
            layouts.emplace_back(id, std::move(l));
        } catch (const Error& e) {
            status.failures.push_back({id, e.what()});
        }
    }
    if (layouts.empty()) throw Error(Errc::empty_corpus, "evaluate: no usable layouts");
    CorpusReport report = evaluate_corpus(layouts);
    fs::create_directories(out_dir);
    write_text_file(out_dir + "/report.csv", corpus_report_csv(report));
    write_text_file(out_dir + "/report.json", corpus_report_json(report).dump(2) + "\n");
    status.loaded = static_cast<int>(layouts.size());
    status.failed = static_cast<int>(status.failures.size());
    return status;
}

namespace {

std::string fmt_mean(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string ablation_row(const std::string& name, const CorpusReport& r) {
    std::string row = name;
    row += ',' + fmt_mean(r.mean_ove);
    row += ',' + fmt_mean(r.mean_ali);
    row += ',';
    if (r.mean_und_l) row += fmt_mean(*r.mean_und_l);
    row += ',';
    if (r.mean_und_s) row += fmt_mean(*r.mean_und_s);
    return row + '\n';
}

}  // namespace

CommandStatus cmd_experiment(const CorpusStore& store, const std::string& test_manifest,
                             const PipelineConfig& cfg, bool ablation,
                             const std::string& out_dir) {
    TestSuite suite = load_test_manifest(test_manifest);
    if (suite.canvases.empty()) throw Error(Errc::empty_corpus, "experiment: no test canvases");

    CommandStatus status;
    if (!ablation) {
        ExperimentResult result = run_suite(suite, store, cfg, PipelineMode::full);
        write_experiment_outputs(result, out_dir);
        status.loaded = static_cast<int>(result.report.count);
        status.failures = result.failures;
    } else {
        const std::pair<const char*, PipelineMode> modes[] = {
            {"recommender_only", PipelineMode::recommender_only},
            {"plus_grader", PipelineMode::grader_only},
            {"plus_feedback", PipelineMode::full},
        };
        std::string csv = "configuration,ove,ali,und_l,und_s\n";
        for (const auto& [name, mode] : modes) {
            ExperimentResult result = run_suite(suite, store, cfg, mode);
            write_experiment_outputs(result, out_dir + "/" + name);
            csv += ablation_row(name, result.report);
            status.loaded = static_cast<int>(result.report.count);
            for (const IngestFailure& f : result.failures) status.failures.push_back(f);
        }
        fs::create_directories(out_dir);
        write_text_file(out_dir + "/ablation.csv", csv);
    }
    status.failed = static_cast<int>(status.failures.size());
    return status;
}

}  // namespace layr
