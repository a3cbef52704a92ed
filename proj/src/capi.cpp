#include "layr.h"

#include <algorithm>
#include <cstring>
#include <new>

#include "pipeline.hpp"

using namespace layr;

struct layr_store {
    CorpusStore store;
};

namespace {

void put_message(char* err, size_t err_cap, const std::string& msg) {
    if (!err || err_cap == 0) return;
    std::size_t n = std::min(msg.size(), err_cap - 1);
    std::memcpy(err, msg.data(), n);
    err[n] = '\0';
}

std::string failure_summary(const CommandStatus& s) {
    std::string msg = "loaded " + std::to_string(s.loaded) + ", failed " +
                      std::to_string(s.failed);
    for (const IngestFailure& f : s.failures) msg += "; " + f.id + ": " + f.message;
    return msg;
}

layr_status from_status(const CommandStatus& s, char* err, size_t err_cap) {
    if (s.failed == 0) return LAYR_OK;
    put_message(err, err_cap, failure_summary(s));
    return LAYR_PARTIAL;
}

template <typename Fn>
layr_status guarded(char* err, size_t err_cap, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        put_message(err, err_cap, std::string(errc_name(e.code())) + ": " + e.what());
        return LAYR_ERROR;
    } catch (const std::exception& e) {
        put_message(err, err_cap, e.what());
        return LAYR_ERROR;
    } catch (...) {
        put_message(err, err_cap, "unknown error");
        return LAYR_ERROR;
    }
}

PipelineConfig parse_config_text(const char* config_json) {
    if (!config_json || !*config_json) return PipelineConfig{};
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::bad_config, std::string("config: ") + e.what());
    }
    return config_from_json(j);
}

bool require(const void* p, const char* what, char* err, size_t err_cap) {
    if (p) return true;
    put_message(err, err_cap, std::string("null argument: ") + what);
    return false;
}

}  // namespace

extern "C" {

const char* layr_version(void) {
    return "0.1.0";
}

layr_status layr_index_build(const char* corpus_manifest, const char* embeddings_tsv,
                             const char* out_path, char* err, size_t err_cap) {
    if (!require(corpus_manifest, "corpus_manifest", err, err_cap) ||
        !require(out_path, "out_path", err, err_cap))
        return LAYR_ERROR;
    return guarded(err, err_cap, [&] {
        CommandStatus s = cmd_index_build(corpus_manifest,
                                          embeddings_tsv ? embeddings_tsv : "", out_path);
        return from_status(s, err, err_cap);
    });
}

layr_status layr_store_open(const char* index_path, const char* corpus_manifest,
                            layr_store** out_store, char* err, size_t err_cap) {
    if (!require(index_path, "index_path", err, err_cap) ||
        !require(out_store, "out_store", err, err_cap))
        return LAYR_ERROR;
    *out_store = nullptr;
    return guarded(err, err_cap, [&] {
        CorpusStore store = load_store(index_path, corpus_manifest ? corpus_manifest : "");
        *out_store = new layr_store{std::move(store)};
        return LAYR_OK;
    });
}

void layr_store_close(layr_store* store) {
    delete store;
}

long layr_store_size(const layr_store* store) {
    return store ? static_cast<long>(store->store.entries.size()) : -1;
}

layr_status layr_generate(const layr_store* store, const char* canvas_png,
                          const char* config_json, const char* out_dir, char* err,
                          size_t err_cap) {
    if (!require(store, "store", err, err_cap) ||
        !require(canvas_png, "canvas_png", err, err_cap) ||
        !require(out_dir, "out_dir", err, err_cap))
        return LAYR_ERROR;
    return guarded(err, err_cap, [&] {
        cmd_generate(store->store, canvas_png, parse_config_text(config_json), out_dir);
        return LAYR_OK;
    });
}

layr_status layr_composite(const char* layout_json, const char* canvas_png,
                           const char* out_png, char* err, size_t err_cap) {
    if (!require(layout_json, "layout_json", err, err_cap) ||
        !require(canvas_png, "canvas_png", err, err_cap) ||
        !require(out_png, "out_png", err, err_cap))
        return LAYR_ERROR;
    return guarded(err, err_cap, [&] {
        cmd_composite(layout_json, canvas_png, out_png);
        return LAYR_OK;
    });
}

layr_status layr_evaluate(const char* layouts_manifest, const char* out_dir, char* err,
                          size_t err_cap) {
    if (!require(layouts_manifest, "layouts_manifest", err, err_cap) ||
        !require(out_dir, "out_dir", err, err_cap))
        return LAYR_ERROR;
    return guarded(err, err_cap, [&] {
        return from_status(cmd_evaluate(layouts_manifest, out_dir), err, err_cap);
    });
}

layr_status layr_experiment(const layr_store* store, const char* test_manifest,
                            const char* config_json, int ablation, const char* out_dir,
                            char* err, size_t err_cap) {
    if (!require(store, "store", err, err_cap) ||
        !require(test_manifest, "test_manifest", err, err_cap) ||
        !require(out_dir, "out_dir", err, err_cap))
        return LAYR_ERROR;
    return guarded(err, err_cap, [&] {
        CommandStatus s = cmd_experiment(store->store, test_manifest,
                                         parse_config_text(config_json), ablation != 0,
                                         out_dir);
        return from_status(s, err, err_cap);
    });
}

}  // extern "C"
