#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "feedback.hpp"
#include "oracles.hpp"

using namespace layr;

namespace {

Element el(const char* id, ElementType k, BBox b, std::optional<std::string> asset) {
    return Element{id, k, b, std::move(asset)};
}

Layout make_layout(std::vector<Element> elements, int w = 256, int h = 256) {
    Layout l;
    l.canvas_w = w;
    l.canvas_h = h;
    l.elements = std::move(elements);
    return l;
}

RasterImage render(const Layout& l) {
    AssetResolver assets;
    return composite(RasterImage::solid(l.canvas_w, l.canvas_h, {255, 255, 255, 255}), l,
                     assets);
}

}  // namespace

TEST_CASE("gamma1") {
    Layout same = make_layout({el("a", ElementType::text, {0.1, 0.1, 0.2, 0.2}, "#336699"),
                               el("b", ElementType::text, {0.5, 0.5, 0.2, 0.2}, "#336699")});
    CHECK(gamma1(same, render(same)) == doctest::Approx(1.0).epsilon(1e-6));

    Layout single = make_layout({el("a", ElementType::text, {0.1, 0.1, 0.2, 0.2}, "#000000")});
    CHECK(gamma1(single, render(single)) == 1.0);

    Layout split = make_layout({el("a", ElementType::text, {0.0, 0.0, 0.25, 0.25}, "#000000"),
                                el("b", ElementType::text, {0.5, 0.5, 0.25, 0.25}, "#ffffff")});
    // Per-channel population std of {0, 1} is 0.5.
    CHECK(gamma1(split, render(split)) == doctest::Approx(std::exp(-0.5)).epsilon(1e-6));
}

TEST_CASE("gamma2 counts every element pair, underlays included") {
    Layout disjoint = make_layout({el("u", ElementType::underlay, {0.0, 0.0, 0.4, 0.4}, {}),
                                   el("a", ElementType::text, {0.5, 0.5, 0.2, 0.2}, {}),
                                   el("b", ElementType::text, {0.75, 0.1, 0.2, 0.2}, {})});
    CHECK(gamma2(disjoint) == 1.0);

    Layout twin = make_layout({el("a", ElementType::text, {0.2, 0.2, 0.3, 0.3}, {}),
                               el("b", ElementType::text, {0.2, 0.2, 0.3, 0.3}, {})});
    CHECK(gamma2(twin) == doctest::Approx(0.5).epsilon(1e-12));

    Layout three = make_layout({el("a", ElementType::text, {0.125, 0.125, 0.25, 0.25}, {}),
                                el("b", ElementType::text, {0.25, 0.25, 0.25, 0.25}, {}),
                                el("c", ElementType::underlay, {0.1875, 0.1875, 0.25, 0.25}, {})});
    oracle::Grid g(1024);
    CHECK(gamma2(three) == doctest::Approx(oracle::gamma2(three, g)).epsilon(1e-12));

    // Text fully inside an underlay drags gamma2 down even though Ove is 0.
    Layout on_underlay = make_layout({el("u", ElementType::underlay, {0.1, 0.1, 0.5, 0.5}, {}),
                                      el("t", ElementType::text, {0.2, 0.2, 0.2, 0.2}, {})});
    CHECK(overlay(on_underlay) == 0.0);
    CHECK(gamma2(on_underlay) < 1.0);
}

TEST_CASE("gamma3 occlusion by later elements") {
    Layout clean = make_layout({el("a", ElementType::text, {0.1, 0.1, 0.2, 0.2}, {}),
                                el("b", ElementType::text, {0.5, 0.5, 0.2, 0.2}, {})});
    CHECK(gamma3(clean) == 1.0);

    // A text fully buried under a later logo.
    Layout buried = make_layout({el("a", ElementType::text, {0.3, 0.3, 0.2, 0.2}, {}),
                                 el("b", ElementType::logo, {0.25, 0.25, 0.3, 0.3}, {})});
    CHECK(gamma3(buried) == doctest::Approx(0.5).epsilon(1e-12));

    // 40% coverage stays visible at the 0.5 threshold.
    Layout partial = make_layout({el("a", ElementType::text, {0.2, 0.2, 0.4, 0.4}, {}),
                                  el("b", ElementType::text, {0.2, 0.44, 0.4, 0.4}, {})});
    auto fractions = occlusion_fractions(partial);
    CHECK(fractions[0] == doctest::Approx(0.4).epsilon(0.02));
    CHECK(fractions[0] < 0.5);
    CHECK(gamma3(partial) == 1.0);

    // Underlays never occlude.
    Layout under = make_layout({el("a", ElementType::text, {0.3, 0.3, 0.2, 0.2}, {}),
                                el("u", ElementType::underlay, {0.0, 0.0, 1.0, 1.0}, {})});
    CHECK(gamma3(under) == 1.0);
}

TEST_CASE("grade decision is the conjunction of inclusive threshold checks") {
    Layout clean = make_layout({el("a", ElementType::text, {0.1, 0.1, 0.2, 0.1}, "#404040"),
                                el("b", ElementType::text, {0.1, 0.4, 0.2, 0.1}, "#404040")});
    GraderReport r = grade(clean, render(clean), Thresholds{});
    CHECK(r.accepted);
    CHECK(r.passes[0]);
    CHECK(r.passes[1]);
    CHECK(r.passes[2]);

    // Boundary: gamma2 == t2 passes (>= is inclusive).
    Layout twin = make_layout({el("a", ElementType::text, {0.2, 0.2, 0.3, 0.3}, "#404040"),
                               el("b", ElementType::text, {0.2, 0.2, 0.3, 0.3}, "#404040")});
    Thresholds t{0.1, 0.5, 0.0};
    r = grade(twin, render(twin), t);
    CHECK(r.gamma2 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.passes[1]);

    Thresholds strict{0.5, 0.9, 0.8};
    r = grade(twin, render(twin), strict);
    CHECK_FALSE(r.accepted);
    CHECK(r.passes[0]);
    CHECK_FALSE(r.passes[1]);

    CHECK_THROWS_AS(grade(twin, render(twin), Thresholds{2.0, 0.5, 0.5}), Error);
}

TEST_CASE("re-grading an unchanged layout gives an identical report") {
    Layout l = make_layout({el("a", ElementType::text, {0.1, 0.1, 0.3, 0.2}, "#446688"),
                            el("b", ElementType::text, {0.3, 0.2, 0.3, 0.2}, "#224466")});
    RasterImage img = render(l);
    GraderReport r1 = grade(l, img, Thresholds{});
    GraderReport r2 = grade(l, img, Thresholds{});
    CHECK(r1.gamma1 == r2.gamma1);
    CHECK(r1.gamma2 == r2.gamma2);
    CHECK(r1.gamma3 == r2.gamma3);
    CHECK(r1.accepted == r2.accepted);
}

TEST_CASE("feedback on an accepted report is empty") {
    Layout l = make_layout({el("a", ElementType::text, {0.1, 0.1, 0.2, 0.1}, {})});
    GraderReport r = grade(l, render(l), Thresholds{});
    REQUIRE(r.accepted);
    FeedbackPlan plan = feedback(l, r);
    CHECK(plan.deltas.empty());
    CHECK_FALSE(plan.uncorrectable_color);
}

TEST_CASE("feedback resolves the worst overlap by moving the later box") {
    // Two equal boxes, half-overlapping horizontally.
    Layout l = make_layout({el("a", ElementType::text, {0.2, 0.3, 0.2, 0.2}, {}),
                            el("b", ElementType::text, {0.3, 0.3, 0.2, 0.2}, {})});
    GraderReport r = grade(l, render(l), Thresholds{});
    REQUIRE_FALSE(r.passes[1]);
    FeedbackPlan plan = feedback(l, r);
    REQUIRE(plan.deltas.size() == 1);
    const Delta& d = plan.deltas[0];
    CHECK(d.element_id == "b");
    CHECK(d.reason == DeltaReason::resolve_overlap);
    // Cheapest exit is +x by the overlap width.
    CHECK(d.dx == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(d.dy == 0.0);

    BBox moved{l.elements[1].bbox.x + d.dx, l.elements[1].bbox.y + d.dy,
               l.elements[1].bbox.w, l.elements[1].bbox.h};
    CHECK(intersection_area(l.elements[0].bbox, moved) <= 1e-12);
}

TEST_CASE("feedback pushes boxes out of the protected region") {
    Layout l = make_layout({el("a", ElementType::text, {0.45, 0.45, 0.05, 0.05}, {}),
                            el("b", ElementType::text, {0.45, 0.45, 0.05, 0.05}, {})});
    ProtectedRegion omega{{0.4, 0.4, 0.2, 0.2}};
    GraderReport r = grade(l, render(l), Thresholds{});
    REQUIRE_FALSE(r.accepted);
    FeedbackPlan plan = feedback(l, r, &omega);
    REQUIRE(!plan.deltas.empty());
    const Delta& d = plan.deltas[0];
    CHECK(d.reason == DeltaReason::exit_protected_region);
    // Left exit is minimal (and wins the tie against up).
    CHECK(d.dx == doctest::Approx(-0.10).epsilon(1e-9));
    CHECK(d.dy == 0.0);

    for (const Delta& delta : plan.deltas) {
        const Element* e = nullptr;
        for (const Element& cand : l.elements)
            if (cand.id == delta.element_id) e = &cand;
        REQUIRE(e != nullptr);
        BBox moved = clamp_to_canvas(
            {e->bbox.x + delta.dx, e->bbox.y + delta.dy, e->bbox.w, e->bbox.h});
        CHECK(intersection_area(moved, omega.region) <= 1e-12);
    }
}

TEST_CASE("color-only rejections are flagged uncorrectable") {
    Layout l = make_layout({el("a", ElementType::text, {0.1, 0.1, 0.2, 0.1}, "#000000"),
                            el("b", ElementType::text, {0.1, 0.4, 0.2, 0.1}, "#ffffff")});
    GraderReport r = grade(l, render(l), Thresholds{0.99, 0.9, 0.8});
    REQUIRE_FALSE(r.accepted);
    REQUIRE_FALSE(r.passes[0]);
    REQUIRE(r.passes[1]);
    FeedbackPlan plan = feedback(l, r);
    CHECK(plan.deltas.empty());
    CHECK(plan.uncorrectable_color);
}

TEST_CASE("refine applies deltas, clamps, and polishes") {
    Layout l = make_layout({el("a", ElementType::text, {0.2, 0.3, 0.2, 0.2}, {}),
                            el("b", ElementType::text, {0.3, 0.3, 0.2, 0.2}, {})});
    GraderReport r = grade(l, render(l), Thresholds{});
    FeedbackPlan plan = feedback(l, r);
    REQUIRE(plan.deltas.size() == 1);

    SearchBudget budget;
    budget.max_moves = 50;
    Layout refined = refine(l, plan, CostWeights{}, budget);
    REQUIRE(refined.elements.size() == 2);
    CHECK(refined.elements[0].id == "a");
    CHECK(refined.elements[1].id == "b");
    CHECK(layout_ok(refined));
    CHECK(gamma2(refined) >= gamma2(l));

    // Empty plan: polish only, cost never increases.
    FeedbackPlan empty;
    Layout polished = refine(l, empty, CostWeights{}, budget);
    CHECK(cost(polished, CostWeights{}).total <= cost(l, CostWeights{}).total + 1e-12);

    FeedbackPlan bogus;
    bogus.deltas.push_back({"ghost", 0.1, 0, 0, 0, DeltaReason::resolve_overlap});
    CHECK_THROWS_AS(refine(l, bogus, CostWeights{}, budget), Error);
}

TEST_CASE("refine keeps protected-region exits clear") {
    Layout l = make_layout({el("a", ElementType::text, {0.45, 0.45, 0.08, 0.08}, {}),
                            el("b", ElementType::text, {0.46, 0.47, 0.08, 0.08}, {})});
    ProtectedRegion omega{{0.4, 0.4, 0.25, 0.25}};
    GraderReport r = grade(l, render(l), Thresholds{});
    REQUIRE_FALSE(r.accepted);
    FeedbackPlan plan = feedback(l, r, &omega);
    SearchBudget budget;
    budget.max_moves = 80;
    Layout refined = refine(l, plan, CostWeights{}, budget, &omega);
    for (const Delta& d : plan.deltas) {
        if (d.reason != DeltaReason::exit_protected_region) continue;
        for (const Element& e : refined.elements)
            if (e.id == d.element_id)
                CHECK(intersection_area(e.bbox, omega.region) <= 1e-12);
    }
}

TEST_CASE("one feedback round improves gamma2 on overlap-only rejections") {
    std::mt19937_64 rng(91);
    SearchBudget budget;
    budget.max_moves = 60;
    int improved = 0, applicable = 0;
    for (int trial = 0; trial < 40; ++trial) {
        Layout l = oracle::random_grid_layout(rng, 4);
        GraderReport r = grade(l, render(l), Thresholds{});
        if (r.accepted || !(!r.passes[1] && r.passes[0] && r.passes[2])) continue;
        FeedbackPlan plan = feedback(l, r);
        if (plan.deltas.empty()) continue;
        ++applicable;
        budget.rng_seed = rng();
        Layout refined = refine(l, plan, CostWeights{}, budget);
        if (gamma2(refined) > gamma2(l)) ++improved;
    }
    CHECK(improved == applicable);
}
