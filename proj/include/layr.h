/* layr — content-aware layout generation engine.
 *
 * C interface to the shared library. All functions return a layr_status;
 * on LAYR_ERROR (and for the failure summary on LAYR_PARTIAL) a message is
 * written to the caller-provided buffer. Handles are opaque and must be
 * released with their matching close function.
 */
#ifndef LAYR_H
#define LAYR_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define LAYR_API __declspec(dllexport)
#else
#define LAYR_API __attribute__((visibility("default")))
#endif

typedef enum layr_status {
    LAYR_OK = 0,      /* success */
    LAYR_ERROR = 1,   /* fatal error, nothing usable produced */
    LAYR_PARTIAL = 2  /* finished, but some corpus entries were rejected */
} layr_status;

/* A built retrieval corpus: exemplar layouts plus their embedding index. */
typedef struct layr_store layr_store;

LAYR_API const char* layr_version(void);

/* Embeds every corpus entry (precomputed vectors from embeddings_tsv win
 * over the built-in image embedder; pass NULL for none) and writes the
 * index file plus the corpus snapshot next to it. */
LAYR_API layr_status layr_index_build(const char* corpus_manifest,
                                      const char* embeddings_tsv,
                                      const char* out_path,
                                      char* err, size_t err_cap);

/* Opens an index file written by layr_index_build. corpus_manifest may be
 * NULL; then layouts come from the snapshot stored next to the index. */
LAYR_API layr_status layr_store_open(const char* index_path,
                                     const char* corpus_manifest,
                                     layr_store** out_store,
                                     char* err, size_t err_cap);

LAYR_API void layr_store_close(layr_store* store);

/* Number of exemplars, or -1 for a null handle. */
LAYR_API long layr_store_size(const layr_store* store);

/* Runs retrieve -> propose -> grade -> refine for one canvas and writes
 * layout.json, composite.png and trace.json into out_dir. config_json is a
 * JSON document (text, not a path); NULL or "" uses defaults. */
LAYR_API layr_status layr_generate(const layr_store* store,
                                   const char* canvas_png,
                                   const char* config_json,
                                   const char* out_dir,
                                   char* err, size_t err_cap);

/* Renders a layout file onto a canvas image. */
LAYR_API layr_status layr_composite(const char* layout_json,
                                    const char* canvas_png,
                                    const char* out_png,
                                    char* err, size_t err_cap);

/* Scores a manifest of layouts and writes report.json / report.csv. */
LAYR_API layr_status layr_evaluate(const char* layouts_manifest,
                                   const char* out_dir,
                                   char* err, size_t err_cap);

/* Runs the pipeline over a test manifest and writes reports and traces.
 * With ablation != 0, also runs the recommender-only and grader-gated
 * configurations and writes ablation.csv. */
LAYR_API layr_status layr_experiment(const layr_store* store,
                                     const char* test_manifest,
                                     const char* config_json,
                                     int ablation,
                                     const char* out_dir,
                                     char* err, size_t err_cap);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LAYR_H */
