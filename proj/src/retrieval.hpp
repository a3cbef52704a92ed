#pragma once

#include <map>
#include <string>
#include <vector>

#include "embedding.hpp"
#include "geometry.hpp"

namespace layr {

// One exemplar: a canvas image, its ground-truth layout, and the image
// embedding used for similarity retrieval.
struct CorpusEntry {
    std::string id;
    std::string image_path;
    Layout layout;
    Embedding embedding;
};

struct ScoredId {
    std::string id;
    double score = 0.0;
};

struct RetrievalResult {
    std::vector<ScoredId> hits;  // descending score, ties by ascending id
};

// Exact linear-scan cosine index. Immutable after build; safe for
// concurrent queries.
class EmbeddingIndex {
public:
    EmbeddingIndex() = default;
    explicit EmbeddingIndex(std::vector<Embedding> embeddings);

    std::size_t size() const { return embeddings_.size(); }
    std::size_t dim() const { return embeddings_.empty() ? 0 : embeddings_[0].dim(); }
    const std::vector<Embedding>& embeddings() const { return embeddings_; }
    const Embedding* find(const std::string& id) const;

    RetrievalResult query_topk(const Embedding& q, int k) const;

    void save(const std::string& path) const;
    static EmbeddingIndex load(const std::string& path);

private:
    std::vector<Embedding> embeddings_;
    std::map<std::string, std::size_t> by_id_;
};

// Entries plus their index; what generation runs against. The index file is
// the embedding file; layouts travel in a corpus snapshot written next to it
// ("<index>.corpus.json") so a single --index argument round-trips.
struct CorpusStore {
    std::vector<CorpusEntry> entries;
    EmbeddingIndex index;

    const CorpusEntry* entry(const std::string& id) const;
    std::vector<const CorpusEntry*> topk(const Embedding& q, int k) const;
};

CorpusStore make_store(std::vector<CorpusEntry> entries);

std::string corpus_snapshot_path(const std::string& index_path);
void save_store(const CorpusStore& store, const std::string& index_path);

// Loads embeddings from index_path; layouts come from manifest_path when
// given, otherwise from the snapshot next to the index.
CorpusStore load_store(const std::string& index_path, const std::string& manifest_path = "");

}  // namespace layr
