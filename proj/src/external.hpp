#pragma once

#include <string>
#include <vector>

#include "search.hpp"

namespace layr {

struct EndpointConfig {
    std::string url;          // e.g. "http://127.0.0.1:8080/propose"
    int timeout_ms = 30000;
};

struct ProposalRequest {
    int canvas_w = 0;
    int canvas_h = 0;
    std::vector<const Layout*> examples;
    std::string instructions;
};

struct ProposalOutcome {
    Layout layout;
    bool fallback = false;
    std::string fallback_reason;  // "timeout" | "transport_error" | "malformed_response"
};

std::string default_instructions();

// Posts the request as JSON and expects a layout JSON body back. Any
// transport or validation failure falls back to propose_initial +
// local_search over the retrieved exemplars; the outcome records why.
ProposalOutcome external_propose(const ProposalRequest& req, const EndpointConfig& endpoint,
                                 const std::vector<const CorpusEntry*>& retrieved,
                                 const CostWeights& w, const SearchBudget& budget,
                                 const ProtectedRegion* omega = nullptr);

}  // namespace layr
