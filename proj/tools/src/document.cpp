#include "gpdwell_tools/document.hpp"

#include "gpdwell/error.hpp"

#ifndef GPDWELL_VERSION
#define GPDWELL_VERSION "0.0.0"
#endif

namespace gpdwell::cli {
namespace {

constexpr std::string_view kHashKey = "content_hash";

Json envelope(const Provenance& prov, Json results) {
    Json config = Json::object();
    for (const auto& [key, value] : prov.config) config[key] = value;
    Json doc = Json::object();
    doc["tool"] = "gpdwell";
    doc["version"] = tool_version();
    doc["command"] = prov.command;
    doc["config"] = std::move(config);
    doc["results"] = std::move(results);
    return doc;
}

std::string hash_of(const Json& doc) { return "fnv1a64:" + io::fnv1a64(doc.dump(2)); }

}  // namespace

std::string tool_version() { return GPDWELL_VERSION; }

std::vector<std::string> provenance_lines(const Provenance& prov) {
    std::vector<std::string> lines;
    lines.push_back("gpdwell " + tool_version());
    lines.push_back("command: " + prov.command);
    for (const auto& [key, value] : prov.config) lines.push_back("config: " + key + "=" + value);
    return lines;
}

std::string render_json(const Provenance& prov, Json results) {
    Json doc = envelope(prov, std::move(results));
    doc[std::string(kHashKey)] = hash_of(doc);
    return doc.dump(2) + "\n";
}

Json parse_json_document(std::string_view text) {
    Json doc = Json::parse(text.begin(), text.end(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw ValidationError("JSON: document does not parse as an object");
    }
    auto it = doc.find(std::string(kHashKey));
    if (it == doc.end() || !it->is_string()) {
        throw ValidationError("JSON: missing content_hash");
    }
    const std::string declared = it->get<std::string>();
    Json body = doc;
    body.erase(std::string(kHashKey));
    const std::string computed = hash_of(body);
    if (declared != computed) {
        throw ValidationError("JSON: content hash mismatch (declared " + declared +
                              ", computed " + computed + ")");
    }
    return doc;
}

RoundTrip verify_round_trip(std::string_view text) {
    RoundTrip rt;
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        Json doc = parse_json_document(text);
        rt.kind = "json";
        rt.records = doc.size();
        rt.identical = doc.dump(2) + "\n" == text;
        return rt;
    }
    io::CsvDocument doc = io::parse_csv(text);
    rt.kind = "csv";
    rt.records = doc.rows.size();
    rt.identical = io::render_csv(doc) == text;
    return rt;
}

std::string single_line(std::string_view text) {
    std::string s(text);
    for (char& ch : s) {
        if (ch == '\n' || ch == '\r') ch = ' ';
    }
    return s;
}

}  // namespace gpdwell::cli
