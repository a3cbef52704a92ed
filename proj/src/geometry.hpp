#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace layr {

// Tolerance for boundary decisions (containment, canvas bounds).
inline constexpr double kGeomTol = 1e-9;

enum class ElementType { text, logo, underlay };

ElementType parse_element_type(std::string_view s);
const char* to_string(ElementType t);

// Axis-aligned box in normalized canvas units, (x, y) = top-left corner.
struct BBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double x2() const { return x + w; }
    double y2() const { return y + h; }
    double cx() const { return x + 0.5 * w; }
    double cy() const { return y + 0.5 * h; }
};

bool bbox_valid(const BBox& b);
double area(const BBox& b);
double intersection_area(const BBox& a, const BBox& b);
bool contains(const BBox& outer, const BBox& inner);

// Moves the box back onto the unit canvas, shrinking only when it cannot fit.
BBox clamp_to_canvas(const BBox& b);

// Chebyshev separation between two boxes: 0 when they touch or overlap.
double box_gap(const BBox& a, const BBox& b);

struct Element {
    std::string id;
    ElementType kind = ElementType::text;
    BBox bbox;
    std::optional<std::string> asset;  // "#rrggbb[aa]" or an image path
};

// Element list order is render order, back to front.
struct Layout {
    int canvas_w = 0;
    int canvas_h = 0;
    std::vector<Element> elements;
};

struct ProtectedRegion {
    BBox region;
};

enum class ViolationKind {
    duplicate_id,
    empty_id,
    out_of_canvas,
    non_positive_size,
    non_positive_canvas,
    underlay_after_foreground,  // warning only
};

struct Violation {
    ViolationKind kind;
    bool is_error = true;
    std::string element_id;
    std::string message;
};

std::vector<Violation> validate_layout(const Layout& l);

// True when the violation list carries no errors (warnings are fine).
bool layout_ok(const std::vector<Violation>& violations);
bool layout_ok(const Layout& l);

// Throws Errc::invalid_layout listing the first few violations.
void require_valid(const Layout& l);

}  // namespace layr
