#include "metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace layr {

double overlay(const Layout& l) {
    std::vector<const BBox*> boxes;
    for (const Element& e : l.elements)
        if (e.kind != ElementType::underlay) boxes.push_back(&e.bbox);
    if (boxes.size() < 2) return 0.0;
    double inter = 0.0;
    for (std::size_t i = 0; i < boxes.size(); ++i)
        for (std::size_t j = i + 1; j < boxes.size(); ++j)
            inter += intersection_area(*boxes[i], *boxes[j]);
    double total = 0.0;
    for (const BBox* b : boxes) total += area(*b);
    // Heavily stacked boxes can push the raw ratio past 1.
    return std::min(inter / total, 1.0);
}

namespace {

void axis_values(const BBox& b, double out[6]) {
    out[0] = b.x;
    out[1] = b.cx();
    out[2] = b.x2();
    out[3] = b.y;
    out[4] = b.cy();
    out[5] = b.y2();
}

}  // namespace

double alignment(const Layout& l) {
    const std::size_t n = l.elements.size();
    if (n <= 1) return 0.0;
    std::vector<std::array<double, 6>> axes(n);
    for (std::size_t i = 0; i < n; ++i) axis_values(l.elements[i].bbox, axes[i].data());
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (int a = 0; a < 6; ++a)
                best = std::min(best, std::abs(axes[i][a] - axes[j][a]));
        }
        sum += best;
    }
    return sum / static_cast<double>(n);
}

std::optional<double> underlay_loose(const Layout& l) {
    std::vector<const BBox*> unders;
    std::vector<const BBox*> others;
    for (const Element& e : l.elements)
        (e.kind == ElementType::underlay ? unders : others).push_back(&e.bbox);
    if (unders.empty()) return std::nullopt;
    double sum = 0.0;
    for (const BBox* u : unders) {
        double best = 0.0;
        for (const BBox* e : others)
            best = std::max(best, intersection_area(*u, *e) / area(*e));
        sum += std::min(best, 1.0);  // x2()-x can exceed w by an ulp
    }
    return sum / static_cast<double>(unders.size());
}

std::optional<double> underlay_strict(const Layout& l) {
    std::vector<const BBox*> unders;
    std::vector<const BBox*> others;
    for (const Element& e : l.elements)
        (e.kind == ElementType::underlay ? unders : others).push_back(&e.bbox);
    if (unders.empty()) return std::nullopt;
    double sum = 0.0;
    for (const BBox* u : unders) {
        bool hit = std::any_of(others.begin(), others.end(),
                               [&](const BBox* e) { return contains(*u, *e); });
        sum += hit ? 1.0 : 0.0;
    }
    return sum / static_cast<double>(unders.size());
}

MetricReport evaluate_layout(const Layout& l) {
    MetricReport r;
    r.ove = overlay(l);
    r.ali = alignment(l);
    r.und_l = underlay_loose(l);
    r.und_s = underlay_strict(l);
    return r;
}

CorpusReport evaluate_corpus(const std::vector<std::pair<std::string, Layout>>& layouts) {
    if (layouts.empty()) throw Error(Errc::empty_corpus, "evaluate_corpus: empty corpus");
    CorpusReport rep;
    for (const auto& [id, layout] : layouts) {
        require_valid(layout);
        rep.per_layout.emplace_back(id, evaluate_layout(layout));
    }
    std::sort(rep.per_layout.begin(), rep.per_layout.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    rep.count = rep.per_layout.size();
    double sum_ove = 0.0, sum_ali = 0.0, sum_ul = 0.0, sum_us = 0.0;
    std::size_t und = 0;
    for (const auto& [id, m] : rep.per_layout) {
        sum_ove += m.ove;
        sum_ali += m.ali;
        if (m.und_l) {
            sum_ul += *m.und_l;
            sum_us += *m.und_s;
            ++und;
        }
    }
    rep.mean_ove = sum_ove / static_cast<double>(rep.count);
    rep.mean_ali = sum_ali / static_cast<double>(rep.count);
    rep.und_defined_count = und;
    if (und > 0) {
        rep.mean_und_l = sum_ul / static_cast<double>(und);
        rep.mean_und_s = sum_us / static_cast<double>(und);
    }
    return rep;
}

namespace {

std::string fmt_metric(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string corpus_report_csv(const CorpusReport& r) {
    std::string out = "layout_id,ove,ali,und_l,und_s\n";
    for (const auto& [id, m] : r.per_layout) {
        out += id;
        out += ',' + fmt_metric(m.ove);
        out += ',' + fmt_metric(m.ali);
        out += ',';
        if (m.und_l) out += fmt_metric(*m.und_l);
        out += ',';
        if (m.und_s) out += fmt_metric(*m.und_s);
        out += '\n';
    }
    return out;
}

nlohmann::json corpus_report_json(const CorpusReport& r) {
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [id, m] : r.per_layout) {
        nlohmann::json jm{{"ove", m.ove}, {"ali", m.ali}};
        jm["und_l"] = m.und_l ? nlohmann::json(*m.und_l) : nlohmann::json(nullptr);
        jm["und_s"] = m.und_s ? nlohmann::json(*m.und_s) : nlohmann::json(nullptr);
        per[id] = std::move(jm);
    }
    nlohmann::json mean{{"ove", r.mean_ove}, {"ali", r.mean_ali}};
    mean["und_l"] = r.mean_und_l ? nlohmann::json(*r.mean_und_l) : nlohmann::json(nullptr);
    mean["und_s"] = r.mean_und_s ? nlohmann::json(*r.mean_und_s) : nlohmann::json(nullptr);
    return nlohmann::json{{"count", r.count},
                          {"und_defined_count", r.und_defined_count},
                          {"mean", std::move(mean)},
                          {"per_layout", std::move(per)}};
}

}  // namespace layr
