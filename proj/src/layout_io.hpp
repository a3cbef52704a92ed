#pragma once

#include <string>

#include <json.hpp>

#include "geometry.hpp"

namespace layr {

// Canonical on-disk layout schema:
// {"canvas": {"width": int, "height": int},
//  "elements": [{"id": str, "type": "text"|"logo"|"underlay",
//                "bbox": [x, y, w, h], "asset": str|null}]}
nlohmann::json layout_to_json(const Layout& l);

// Strict parse; with synthesize_ids, elements missing an "id" get e0, e1, ...
// (used for responses from external recommenders).
Layout layout_from_json(const nlohmann::json& j, bool synthesize_ids = false);

Layout load_layout_file(const std::string& path);
void save_layout_file(const Layout& l, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

std::string path_parent(const std::string& path);
std::string path_join(const std::string& base, const std::string& rel);

// Re-anchors relative file-path assets on base_dir so copied layouts stay
// resolvable away from their source file.
void rebase_assets(Layout& l, const std::string& base_dir);

}  // namespace layr
