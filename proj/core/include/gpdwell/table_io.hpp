#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gpdwell::io {

/// A CSV cell: integers and reals are written bare, text is quoted when needed.
using Cell = std::variant<std::int64_t, double, std::string>;

/**
 * A CSV table with '#'-prefixed comment lines before (provenance) and after
 * (footer) the data. Reals are written with 17 significant digits so a parse
 * followed by a render reproduces the file byte for byte.
 */
struct CsvDocument {
    std::vector<std::string> preamble;  // comment text without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> footer;

    std::string content_hash;  // filled by parse_csv / render_csv

    std::size_t column_index(std::string_view name) const;
    double number(std::size_t row, std::string_view column) const;
    std::string text(std::size_t row, std::string_view column) const;
};

std::string format_real(double value);
std::string format_cell(const Cell& cell);

/// FNV-1a 64-bit digest rendered as 16 hex digits.
std::string fnv1a64(std::string_view data);

/// Renders the document. A "content-hash: fnv1a64:<hex>" line covering the
/// header and data rows is appended to the preamble; stale hash lines are dropped.
std::string render_csv(CsvDocument& doc);

/// Parses rendered text. Throws gpdwell::ValidationError on malformed input or
/// a content hash that does not match the data.
CsvDocument parse_csv(std::string_view text);

void write_text_file(const std::string& path, std::string_view contents);
std::string read_text_file(const std::string& path);

}  // namespace gpdwell::io
