#include "external.hpp"

#include <httplib.h>

#include "layout_io.hpp"

namespace layr {

using nlohmann::json;

std::string default_instructions() {
    return "Study the example layouts for this canvas. Choose element counts and "
           "types like the examples, then place bounding boxes that avoid overlap, "
           "keep margins, and align edges. Respond with layout JSON only.";
}

namespace {

// Splits "http://host:port/path" into client target and path.
bool split_url(const std::string& url, std::string& origin, std::string& path) {
    std::size_t scheme = url.find("://");
    if (scheme == std::string::npos) return false;
    std::size_t slash = url.find('/', scheme + 3);
    if (slash == std::string::npos) {
        origin = url;
        path = "/";
    } else {
        origin = url.substr(0, slash);
        path = url.substr(slash);
    }
    return true;
}

Layout parse_response(const std::string& body, int canvas_w, int canvas_h) {
    json j;
    try {
        j = json::parse(body);
    } catch (const json::parse_error& e) {
        throw Error(Errc::malformed_response, std::string("response is not JSON: ") + e.what());
    }
    Layout l;
    try {
        l = layout_from_json(j, /*synthesize_ids=*/true);
    } catch (const Error& e) {
        throw Error(Errc::malformed_response, e.what());
    }
    // The proposal is for the requested canvas; boxes are normalized anyway.
    l.canvas_w = canvas_w;
    l.canvas_h = canvas_h;
    for (Element& e : l.elements) {
        if (e.bbox.w <= 0.0 || e.bbox.h <= 0.0)
            throw Error(Errc::malformed_response,
                        "element \"" + e.id + "\" has non-positive size");
        e.bbox = clamp_to_canvas(e.bbox);
    }
    if (!layout_ok(l))
        throw Error(Errc::malformed_response, "response layout failed validation");
    return l;
}

}  // namespace

ProposalOutcome external_propose(const ProposalRequest& req, const EndpointConfig& endpoint,
                                 const std::vector<const CorpusEntry*>& retrieved,
                                 const CostWeights& w, const SearchBudget& budget,
                                 const ProtectedRegion* omega) {
    auto fall_back = [&](const std::string& reason) {
        ProposalOutcome out;
        out.layout = local_search(propose_initial(req.canvas_w, req.canvas_h, retrieved),
                                  w, budget, omega);
        out.fallback = true;
        out.fallback_reason = reason;
        return out;
    };

    std::string origin, path;
    if (!split_url(endpoint.url, origin, path)) return fall_back("transport_error");

    json examples = json::array();
    for (const Layout* l : req.examples) examples.push_back(layout_to_json(*l));
    json body{{"canvas", {{"width", req.canvas_w}, {"height", req.canvas_h}}},
              {"examples", std::move(examples)},
              {"instructions", req.instructions}};

    httplib::Client client(origin);
    time_t sec = endpoint.timeout_ms / 1000;
    time_t usec = (endpoint.timeout_ms % 1000) * 1000;
    client.set_connection_timeout(sec, usec);
    client.set_read_timeout(sec, usec);
    client.set_write_timeout(sec, usec);

    httplib::Result res = client.Post(path, body.dump(), "application/json");
    if (!res) {
        bool timeout = res.error() == httplib::Error::ConnectionTimeout ||
                       res.error() == httplib::Error::Read ||
                       res.error() == httplib::Error::Write;
        return fall_back(timeout ? "timeout" : "transport_error");
    }
    if (res->status != 200) return fall_back("transport_error");

    try {
        ProposalOutcome out;
        out.layout = parse_response(res->body, req.canvas_w, req.canvas_h);
        return out;
    } catch (const Error&) {
        return fall_back("malformed_response");
    }
}

}  // namespace layr
