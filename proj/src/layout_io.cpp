#include "layout_io.hpp"

#include <fstream>
#include <sstream>

namespace layr {

using nlohmann::json;

nlohmann::json layout_to_json(const Layout& l) {
    json elements = json::array();
    for (const Element& e : l.elements) {
        json je;
        je["id"] = e.id;
        je["type"] = to_string(e.kind);
        je["bbox"] = {e.bbox.x, e.bbox.y, e.bbox.w, e.bbox.h};
        je["asset"] = e.asset ? json(*e.asset) : json(nullptr);
        elements.push_back(std::move(je));
    }
    return json{{"canvas", {{"width", l.canvas_w}, {"height", l.canvas_h}}},
                {"elements", std::move(elements)}};
}

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw Error(Errc::parse_error, "layout json: " + what);
}

}  // namespace

Layout layout_from_json(const nlohmann::json& j, bool synthesize_ids) {
    if (!j.is_object()) fail("document is not an object");
    if (!j.contains("canvas") || !j["canvas"].is_object()) fail("missing canvas object");
    const json& c = j["canvas"];
    if (!c.contains("width") || !c.contains("height") ||
        !c["width"].is_number_integer() || !c["height"].is_number_integer())
        fail("canvas width/height must be integers");

    Layout l;
    l.canvas_w = c["width"].get<int>();
    l.canvas_h = c["height"].get<int>();

    if (!j.contains("elements") || !j["elements"].is_array()) fail("missing elements array");
    int index = 0;
    for (const json& je : j["elements"]) {
        if (!je.is_object()) fail("element is not an object");
        Element e;
        if (je.contains("id")) {
            if (!je["id"].is_string()) fail("element id must be a string");
            e.id = je["id"].get<std::string>();
        } else if (synthesize_ids) {
            e.id = "e" + std::to_string(index);
        } else {
            fail("element is missing an id");
        }
        if (!je.contains("type") || !je["type"].is_string()) fail("element type must be a string");
        e.kind = parse_element_type(je["type"].get<std::string>());
        if (!je.contains("bbox") || !je["bbox"].is_array() || je["bbox"].size() != 4)
            fail("element bbox must be [x, y, w, h]");
        double v[4];
        for (int i = 0; i < 4; ++i) {
            if (!je["bbox"][i].is_number()) fail("bbox entries must be numbers");
            v[i] = je["bbox"][i].get<double>();
        }
        e.bbox = BBox{v[0], v[1], v[2], v[3]};
        if (je.contains("asset") && !je["asset"].is_null()) {
            if (!je["asset"].is_string()) fail("asset must be a string or null");
            e.asset = je["asset"].get<std::string>();
        }
        l.elements.push_back(std::move(e));
        ++index;
    }
    return l;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot write " + path);
    out << content;
    if (!out) throw Error(Errc::io_error, "write failed for " + path);
}

Layout load_layout_file(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw Error(Errc::parse_error, path + ": " + e.what());
    }
    return layout_from_json(j);
}

void save_layout_file(const Layout& l, const std::string& path) {
    write_text_file(path, layout_to_json(l).dump(2) + "\n");
}

std::string path_parent(const std::string& path) {
    std::size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

std::string path_join(const std::string& base, const std::string& rel) {
    if (rel.empty() || rel[0] == '/' || base.empty()) return rel;
    return base + "/" + rel;
}

void rebase_assets(Layout& l, const std::string& base_dir) {
    for (Element& e : l.elements) {
        if (!e.asset || e.asset->empty() || (*e.asset)[0] == '#' || (*e.asset)[0] == '/')
            continue;
        e.asset = path_join(base_dir, *e.asset);
    }
}

}  // namespace layr
