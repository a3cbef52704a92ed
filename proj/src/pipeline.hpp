#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "external.hpp"
#include "feedback.hpp"
#include "metrics.hpp"

namespace layr {

struct PipelineConfig {
    int k = 5;
    CostWeights weights;
    Thresholds thresholds;
    int max_iterations = 3;
    std::optional<ProtectedRegion> omega;
    std::optional<EndpointConfig> external_recommender;
    std::uint64_t rng_seed = 0;
    int occlusion_grid = kDefaultOcclusionGrid;
    int parallelism = 4;
    SearchBudget search;
    bool return_best = false;  // on exhaustion return the best-graded layout instead of the last
};

void validate_config(const PipelineConfig& cfg);
PipelineConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const PipelineConfig& cfg);

struct IterationRecord {
    Layout layout;
    CostBreakdown cost;
    GraderReport report;
    FeedbackPlan plan;
    double wall_ms = 0.0;  // not serialized; traces stay byte-reproducible
};

enum class RunStatus { accepted, exhausted };

struct RunTrace {
    std::vector<IterationRecord> iterations;
    RunStatus status = RunStatus::exhausted;
    int accepted_at = 0;  // 1-based iteration, 0 when never accepted
    bool used_external = false;
    bool external_fallback = false;
    std::string fallback_reason;
};

nlohmann::json trace_to_json(const RunTrace& t);

struct PipelineResult {
    Layout layout;
    RasterImage composite_image;
    RunTrace trace;
};

enum class PipelineMode { full, recommender_only, grader_only };

// Retrieve exemplars for the canvas, propose a layout, then iterate
// composite -> grade -> feedback -> refine until accepted or out of budget.
PipelineResult run_pipeline(const RasterImage& canvas, const CorpusStore& store,
                            const PipelineConfig& cfg, const std::string& asset_base_dir = "");

PipelineResult run_pipeline_mode(const RasterImage& canvas, const CorpusStore& store,
                                 const PipelineConfig& cfg, PipelineMode mode,
                                 const std::string& asset_base_dir = "");

struct IngestFailure {
    std::string id;
    std::string message;
};

struct IngestResult {
    std::vector<CorpusEntry> entries;
    std::vector<IngestFailure> failures;
};

// Corpus manifest: JSON array of {"id", "image", "layout"} with paths
// relative to the manifest. Entries that fail to parse, validate, or embed
// are reported and skipped. Precomputed vectors (by id) win over the
// baseline embedder.
IngestResult ingest_corpus(const std::string& manifest_path,
                           const std::map<std::string, Embedding>* precomputed = nullptr);

struct TestCanvas {
    std::string id;
    std::string image_path;
};

struct TestSuite {
    std::vector<TestCanvas> canvases;
    std::vector<IngestFailure> failures;
};

TestSuite load_test_manifest(const std::string& manifest_path);

struct ExperimentResult {
    CorpusReport report;
    std::vector<std::pair<std::string, RunTrace>> traces;   // by canvas id, sorted
    std::vector<std::pair<std::string, Layout>> layouts;    // by canvas id, sorted
    std::vector<IngestFailure> failures;
};

// Runs the pipeline over every test canvas (parallel up to cfg.parallelism)
// and evaluates the final layouts.
ExperimentResult run_suite(const TestSuite& suite, const CorpusStore& store,
                           const PipelineConfig& cfg, PipelineMode mode);

void write_experiment_outputs(const ExperimentResult& result, const std::string& out_dir);

// Command layer shared by the C API and tests.
struct CommandStatus {
    int loaded = 0;
    int failed = 0;
    std::vector<IngestFailure> failures;
};

CommandStatus cmd_index_build(const std::string& corpus_manifest,
                              const std::string& embeddings_tsv,  // "" = none
                              const std::string& out_path);
void cmd_generate(const CorpusStore& store, const std::string& canvas_png,
                  const PipelineConfig& cfg, const std::string& out_dir);
void cmd_composite(const std::string& layout_json, const std::string& canvas_png,
                   const std::string& out_png);
CommandStatus cmd_evaluate(const std::string& layouts_manifest, const std::string& out_dir);
CommandStatus cmd_experiment(const CorpusStore& store, const std::string& test_manifest,
                             const PipelineConfig& cfg, bool ablation,
                             const std::string& out_dir);

}  // namespace layr
