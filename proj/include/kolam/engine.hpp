#pragma once

#include "kolam/io.hpp"

#include <string>

namespace kolam::engine {

inline constexpr int kDefaultPageSize = 64;
inline constexpr int kMaxPageSize = 1024;

// Request handlers shared by the CLI and the HTTP service. Each takes a
// parsed request body and returns the response body; errors propagate as
// SchemaError or KolamError.

// {"dots", "policy"?} -> junctions, parent rotation, point group and classes.
Json junctions(const Json& request);

// {"dots", "policy"?, "assignment"? | "seed"?, "style"?, "strict"?} -> the
// kolam document. Without assignment or seed every bond is Broken.
KolamDocument kolam_document(const Json& request);
Json kolam(const Json& request);

// {"dots", "policy"?, "symmetric"?, "fixed_bonds"?, "cursor"?, "page_size"?,
//  "classify"?, "strict"?} -> one page of the census.
Json enumerate(const Json& request);
// The same page as CSV text.
std::string enumerate_csv(const Json& request);

// {"document", "edits", "strict"?} -> the edited document.
Json edit_dots(const Json& request);

Json health();

struct Response {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

// Error body: {"engine_version", "schema": "kolam-error/1", "error": {"code", "message"}}.
Response error_response(int status, const std::string& code, const std::string& message);

// Routes one request. Malformed JSON and schema violations give 400,
// KolamError 422, unknown paths 404.
Response dispatch(const std::string& method, const std::string& path, const std::string& body);

}  // namespace kolam::engine
