#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gpdwell/table_io.hpp"

namespace gpdwell::cli {

using Json = nlohmann::json;

/// Ordered key/value echo of a command's effective configuration.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// Provenance shared by every file a command writes.
struct Provenance {
    std::string command;
    ConfigEcho config;
};

std::string tool_version();

/// "# gpdwell <version>", "# command: ...", one "# config: key=value" per entry.
std::vector<std::string> provenance_lines(const Provenance& prov);

/**
 * JSON with a provenance block and a "content_hash" over the pretty-printed
 * document without that key. Keys are sorted, so rendering is deterministic.
 */
std::string render_json(const Provenance& prov, Json results);

/// Parses a rendered JSON file and checks its content hash. Throws
/// ValidationError on malformed input or a mismatch.
Json parse_json_document(std::string_view text);

/// Result of re-reading an emitted file.
struct RoundTrip {
    bool identical = false;  // re-rendering the parsed data reproduces the bytes
    std::string kind;        // "csv" or "json"
    std::size_t records = 0; // data rows (CSV) or top-level keys (JSON)
};

/// Parses `text` (CSV or JSON by content), re-renders it and compares bytes.
/// Throws ValidationError when the text does not parse or its hash is wrong.
RoundTrip verify_round_trip(std::string_view text);

/// Strips line breaks so free text stays on one CSV record.
std::string single_line(std::string_view text);

}  // namespace gpdwell::cli
