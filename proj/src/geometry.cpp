#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace layr {

ElementType parse_element_type(std::string_view s) {
    if (s == "text") return ElementType::text;
    if (s == "logo") return ElementType::logo;
    if (s == "underlay") return ElementType::underlay;
    throw Error(Errc::parse_error, "unknown element type: \"" + std::string(s) + "\"");
}

const char* to_string(ElementType t) {
    switch (t) {
        case ElementType::text: return "text";
        case ElementType::logo: return "logo";
        case ElementType::underlay: return "underlay";
    }
    return "text";
}

bool bbox_valid(const BBox& b) {
    return b.w > 0.0 && b.h > 0.0 && b.x >= 0.0 && b.y >= 0.0 &&
           b.x + b.w <= 1.0 + kGeomTol && b.y + b.h <= 1.0 + kGeomTol &&
           std::isfinite(b.x) && std::isfinite(b.y) && std::isfinite(b.w) && std::isfinite(b.h);
}

double area(const BBox& b) {
    return b.w * b.h;
}

double intersection_area(const BBox& a, const BBox& b) {
    double ox = std::min(a.x2(), b.x2()) - std::max(a.x, b.x);
    double oy = std::min(a.y2(), b.y2()) - std::max(a.y, b.y);
    return std::max(0.0, ox) * std::max(0.0, oy);
}

bool contains(const BBox& outer, const BBox& inner) {
    return inner.x >= outer.x - kGeomTol && inner.y >= outer.y - kGeomTol &&
           inner.x2() <= outer.x2() + kGeomTol && inner.y2() <= outer.y2() + kGeomTol;
}

BBox clamp_to_canvas(const BBox& b) {
    BBox r = b;
    r.w = std::min(b.w, 1.0);
    r.h = std::min(b.h, 1.0);
    r.x = std::clamp(b.x, 0.0, 1.0 - r.w);
    r.y = std::clamp(b.y, 0.0, 1.0 - r.h);
    return r;
}

double box_gap(const BBox& a, const BBox& b) {
    double sx = std::max(a.x, b.x) - std::min(a.x2(), b.x2());
    double sy = std::max(a.y, b.y) - std::min(a.y2(), b.y2());
    return std::max({sx, sy, 0.0});
}

std::vector<Violation> validate_layout(const Layout& l) {
    std::vector<Violation> out;
    if (l.canvas_w <= 0 || l.canvas_h <= 0) {
        out.push_back({ViolationKind::non_positive_canvas, true, "",
                       "canvas dimensions must be positive"});
    }
    std::unordered_set<std::string> seen;
    bool saw_foreground = false;
    for (const Element& e : l.elements) {
        if (e.id.empty()) {
            out.push_back({ViolationKind::empty_id, true, e.id, "element id is empty"});
        } else if (!seen.insert(e.id).second) {
            out.push_back({ViolationKind::duplicate_id, true, e.id,
                           "duplicate element id \"" + e.id + "\""});
        }
        if (e.bbox.w <= 0.0 || e.bbox.h <= 0.0) {
            out.push_back({ViolationKind::non_positive_size, true, e.id,
                           "element \"" + e.id + "\" has non-positive size"});
        } else if (!bbox_valid(e.bbox)) {
            out.push_back({ViolationKind::out_of_canvas, true, e.id,
                           "element \"" + e.id + "\" extends outside the canvas"});
        }
        if (e.kind == ElementType::underlay && saw_foreground) {
            out.push_back({ViolationKind::underlay_after_foreground, false, e.id,
                           "underlay \"" + e.id + "\" is rendered above a foreground element"});
        }
        if (e.kind != ElementType::underlay) saw_foreground = true;
    }
    return out;
}

bool layout_ok(const std::vector<Violation>& violations) {
    return std::none_of(violations.begin(), violations.end(),
                        [](const Violation& v) { return v.is_error; });
}

bool layout_ok(const Layout& l) {
    return layout_ok(validate_layout(l));
}

void require_valid(const Layout& l) {
    auto vs = validate_layout(l);
    if (layout_ok(vs)) return;
    std::string msg = "invalid layout:";
    int shown = 0;
    for (const Violation& v : vs) {
        if (!v.is_error) continue;
        msg += " " + v.message + ";";
        if (++shown == 3) break;
    }
    throw Error(Errc::invalid_layout, msg);
}

}  // namespace layr
