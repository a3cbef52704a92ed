#pragma once

#include <stdexcept>
#include <string>

namespace layr {

// Error categories shared across the library. The C API maps these to
// status codes; C++ callers catch layr::Error.
enum class Errc {
    io_error,
    manifest_not_found,
    parse_error,
    decode_error,
    zero_norm,
    dimension_mismatch,
    duplicate_id,
    empty_corpus,
    empty_retrieval,
    invalid_layout,
    transport_error,
    malformed_response,
    missing_asset,
    unknown_element,
    bad_config,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::io_error: return "io_error";
        case Errc::manifest_not_found: return "manifest_not_found";
        case Errc::parse_error: return "parse_error";
        case Errc::decode_error: return "decode_error";
        case Errc::zero_norm: return "zero_norm";
        case Errc::dimension_mismatch: return "dimension_mismatch";
        case Errc::duplicate_id: return "duplicate_id";
        case Errc::empty_corpus: return "empty_corpus";
        case Errc::empty_retrieval: return "empty_retrieval";
        case Errc::invalid_layout: return "invalid_layout";
        case Errc::transport_error: return "transport_error";
        case Errc::malformed_response: return "malformed_response";
        case Errc::missing_asset: return "missing_asset";
        case Errc::unknown_element: return "unknown_element";
        case Errc::bad_config: return "bad_config";
    }
    return "unknown";
}

}  // namespace layr
