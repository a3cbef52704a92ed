#include "retrieval.hpp"

#include <algorithm>

#include "layout_io.hpp"

namespace layr {

using nlohmann::json;

EmbeddingIndex::EmbeddingIndex(std::vector<Embedding> embeddings)
    : embeddings_(std::move(embeddings)) {
    if (embeddings_.empty())
        throw Error(Errc::empty_corpus, "index: no embeddings");
    std::size_t d = embeddings_[0].dim();
    for (std::size_t i = 0; i < embeddings_.size(); ++i) {
        const Embedding& e = embeddings_[i];
        if (e.dim() != d)
            throw Error(Errc::dimension_mismatch,
                        "index: \"" + e.id + "\" has dimension " + std::to_string(e.dim()) +
                            ", expected " + std::to_string(d));
        if (vector_norm(e.values) <= 0.0)
            throw Error(Errc::zero_norm, "index: zero-norm embedding \"" + e.id + "\"");
        if (!by_id_.emplace(e.id, i).second)
            throw Error(Errc::duplicate_id, "index: duplicate id \"" + e.id + "\"");
    }
}

const Embedding* EmbeddingIndex::find(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &embeddings_[it->second];
}

RetrievalResult EmbeddingIndex::query_topk(const Embedding& q, int k) const {
    if (k < 1) throw Error(Errc::bad_config, "query_topk: k must be >= 1");
    if (q.dim() != dim())
        throw Error(Errc::dimension_mismatch,
                    "query_topk: query dimension " + std::to_string(q.dim()) +
                        " != index dimension " + std::to_string(dim()));
    std::vector<ScoredId> scored;
    scored.reserve(embeddings_.size());
    for (const Embedding& e : embeddings_) scored.push_back({e.id, cosine(q, e)});
    std::sort(scored.begin(), scored.end(), [](const ScoredId& a, const ScoredId& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    });
    if (scored.size() > static_cast<std::size_t>(k)) scored.resize(static_cast<std::size_t>(k));
    return RetrievalResult{std::move(scored)};
}

void EmbeddingIndex::save(const std::string& path) const {
    write_embedding_file(embeddings_, path);
}

EmbeddingIndex EmbeddingIndex::load(const std::string& path) {
    return EmbeddingIndex(read_embedding_file(path));
}

const CorpusEntry* CorpusStore::entry(const std::string& id) const {
    for (const CorpusEntry& e : entries)
        if (e.id == id) return &e;
    return nullptr;
}

std::vector<const CorpusEntry*> CorpusStore::topk(const Embedding& q, int k) const {
    RetrievalResult r = index.query_topk(q, k);
    std::vector<const CorpusEntry*> out;
    out.reserve(r.hits.size());
    for (const ScoredId& s : r.hits) out.push_back(entry(s.id));
    return out;
}

CorpusStore make_store(std::vector<CorpusEntry> entries) {
    std::vector<Embedding> embeddings;
    embeddings.reserve(entries.size());
    for (CorpusEntry& e : entries) {
        e.embedding.id = e.id;
        embeddings.push_back(e.embedding);
    }
    CorpusStore store;
    store.index = EmbeddingIndex(std::move(embeddings));
    store.entries = std::move(entries);
    return store;
}

std::string corpus_snapshot_path(const std::string& index_path) {
    return index_path + ".corpus.json";
}

void save_store(const CorpusStore& store, const std::string& index_path) {
    store.index.save(index_path);
    json entries = json::array();
    for (const CorpusEntry& e : store.entries) {
        entries.push_back(json{{"id", e.id},
                               {"image", e.image_path},
                               {"layout", layout_to_json(e.layout)}});
    }
    json snap{{"version", 1}, {"entries", std::move(entries)}};
    write_text_file(corpus_snapshot_path(index_path), snap.dump(2) + "\n");
}

namespace {

std::map<std::string, std::pair<std::string, Layout>> load_snapshot(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw Error(Errc::parse_error, path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        throw Error(Errc::parse_error, path + ": not a corpus snapshot");
    std::map<std::string, std::pair<std::string, Layout>> out;
    for (const json& je : j["entries"]) {
        if (!je.contains("id") || !je["id"].is_string() || !je.contains("layout"))
            throw Error(Errc::parse_error, path + ": malformed snapshot entry");
        std::string image = je.value("image", std::string());
        out[je["id"].get<std::string>()] = {image, layout_from_json(je["layout"])};
    }
    return out;
}

}  // namespace

CorpusStore load_store(const std::string& index_path, const std::string& manifest_path) {
    EmbeddingIndex index = EmbeddingIndex::load(index_path);
    std::map<std::string, std::pair<std::string, Layout>> layouts;
    if (!manifest_path.empty()) {
        json j;
        try {
            j = json::parse(read_text_file(manifest_path));
        } catch (const json::parse_error& e) {
            throw Error(Errc::parse_error, manifest_path + ": " + e.what());
        }
        if (!j.is_array())
            throw Error(Errc::parse_error, manifest_path + ": manifest must be a JSON array");
        std::string base = path_parent(manifest_path);
        for (const json& je : j) {
            if (!je.is_object() || !je.contains("id") || !je.contains("layout"))
                throw Error(Errc::parse_error, manifest_path + ": entries need id and layout");
            std::string id = je["id"].get<std::string>();
            std::string image = je.value("image", std::string());
            std::string layout_path = path_join(base, je["layout"].get<std::string>());
            Layout l = load_layout_file(layout_path);
            rebase_assets(l, path_parent(layout_path));
            layouts[id] = {image, std::move(l)};
        }
    } else {
        layouts = load_snapshot(corpus_snapshot_path(index_path));
    }

    std::vector<CorpusEntry> entries;
    entries.reserve(index.size());
    for (const Embedding& e : index.embeddings()) {
        auto it = layouts.find(e.id);
        if (it == layouts.end())
            throw Error(Errc::parse_error,
                        "no layout found for indexed entry \"" + e.id + "\"");
        entries.push_back(CorpusEntry{e.id, it->second.first, it->second.second, e});
    }
    return make_store(std::move(entries));
}

}  // namespace layr
