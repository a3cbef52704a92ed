#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "geometry.hpp"

namespace layr {

// Corpus-level layout quality metrics. Underlay scores are undefined for
// layouts without underlay elements and excluded from aggregates.
struct MetricReport {
    double ove = 0.0;
    double ali = 0.0;
    std::optional<double> und_l;
    std::optional<double> und_s;
};

struct CorpusReport {
    // Sorted by layout id; aggregation follows this order.
    std::vector<std::pair<std::string, MetricReport>> per_layout;
    std::size_t count = 0;
    double mean_ove = 0.0;
    double mean_ali = 0.0;
    std::optional<double> mean_und_l;
    std::optional<double> mean_und_s;
    std::size_t und_defined_count = 0;
};

// Pairwise intersection among non-underlay elements over their summed area.
double overlay(const Layout& l);

// Mean over elements of the smallest corresponding-axis deviation to any
// other element; axes are left/center/right x and top/center/bottom y.
double alignment(const Layout& l);

std::optional<double> underlay_loose(const Layout& l);
std::optional<double> underlay_strict(const Layout& l);

MetricReport evaluate_layout(const Layout& l);

CorpusReport evaluate_corpus(const std::vector<std::pair<std::string, Layout>>& layouts);

std::string corpus_report_csv(const CorpusReport& r);
nlohmann::json corpus_report_json(const CorpusReport& r);

}  // namespace layr
