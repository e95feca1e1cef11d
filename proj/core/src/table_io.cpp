#include "gpdwell/table_io.hpp"

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gpdwell/error.hpp"

namespace gpdwell::io {
namespace {

constexpr std::string_view kHashPrefix = "content-hash: fnv1a64:";

bool parses_as_integer(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

bool parses_as_real(std::string_view s, double& out) {
    if (s.empty()) return false;
    const std::string buf(s);
    char* end = nullptr;
    out = std::strtod(buf.c_str(), &end);
    return end == buf.c_str() + buf.size();
}

bool needs_quotes(const std::string& s) {
    if (s.empty()) return true;
    if (s.find_first_of(",\"\r\n") != std::string::npos) return true;
    if (s.front() == '#') return true;
    std::int64_t i = 0;
    double d = 0.0;
    return parses_as_integer(s, i) || parses_as_real(s, d);
}

std::vector<std::string> split_record(std::string_view line, std::vector<bool>* quoted) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur.push_back(ch);
            }
        } else if (ch == '"') {
            in_quotes = true;
            was_quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            if (quoted) quoted->push_back(was_quoted);
            cur.clear();
            was_quoted = false;
        } else {
            cur.push_back(ch);
        }
    }
    if (in_quotes) throw ValidationError("CSV: unterminated quoted field");
    fields.push_back(std::move(cur));
    if (quoted) quoted->push_back(was_quoted);
    return fields;
}

std::string render_body(const CsvDocument& doc) {
    std::string body;
    for (std::size_t i = 0; i < doc.columns.size(); ++i) {
        if (i) body += ',';
        body += format_cell(Cell{doc.columns[i]});
    }
    body += '\n';
    for (const auto& row : doc.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) body += ',';
            body += format_cell(row[i]);
        }
        body += '\n';
    }
    return body;
}

}  // namespace

std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string format_cell(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) return format_real(*d);
    const auto& s = std::get<std::string>(cell);
    if (!needs_quotes(s)) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::size_t CsvDocument::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw ValidationError("CSV: no column named '" + std::string(name) + "'");
}

double CsvDocument::number(std::size_t row, std::string_view column) const {
    const Cell& c = rows.at(row).at(column_index(column));
    if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    if (const auto* d = std::get_if<double>(&c)) return *d;
    throw ValidationError("CSV: cell in column '" + std::string(column) + "' is not numeric");
}

std::string CsvDocument::text(std::size_t row, std::string_view column) const {
    const Cell& c = rows.at(row).at(column_index(column));
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return format_cell(c);
}

std::string render_csv(CsvDocument& doc) {
    const std::string body = render_body(doc);
    doc.content_hash = fnv1a64(body);
    std::string out;
    for (const auto& line : doc.preamble) {
        if (std::string_view(line).starts_with(kHashPrefix)) continue;
        out += "# " + line + '\n';
    }
    out += "# ";
    out += kHashPrefix;
    out += doc.content_hash + '\n';
    out += body;
    for (const auto& line : doc.footer) out += "# " + line + '\n';
    return out;
}

CsvDocument parse_csv(std::string_view text) {
    CsvDocument doc;
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }

    auto comment_text = [](std::string_view line) {
        line.remove_prefix(1);
        if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
        return std::string(line);
    };

    std::size_t i = 0;
    std::string declared_hash;
    for (; i < lines.size() && !lines[i].empty() && lines[i].front() == '#'; ++i) {
        std::string c = comment_text(lines[i]);
        if (std::string_view(c).starts_with(kHashPrefix)) {
            declared_hash = c.substr(kHashPrefix.size());
        }
        doc.preamble.push_back(std::move(c));
    }
    if (i == lines.size()) throw ValidationError("CSV: missing header row");
    doc.columns = split_record(lines[i++], nullptr);

    for (; i < lines.size(); ++i) {
        const std::string_view line = lines[i];
        if (!line.empty() && line.front() == '#') break;
        std::vector<bool> quoted;
        auto fields = split_record(line, &quoted);
        if (fields.size() != doc.columns.size()) {
            throw ValidationError("CSV: row " + std::to_string(doc.rows.size()) + " has " +
                                  std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(doc.columns.size()));
        }
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (std::size_t f = 0; f < fields.size(); ++f) {
            std::int64_t iv = 0;
            double dv = 0.0;
            if (!quoted[f] && parses_as_integer(fields[f], iv)) {
                row.emplace_back(iv);
            } else if (!quoted[f] && parses_as_real(fields[f], dv)) {
                row.emplace_back(dv);
            } else {
                row.emplace_back(std::move(fields[f]));
            }
        }
        doc.rows.push_back(std::move(row));
    }
    for (; i < lines.size(); ++i) {
        if (lines[i].empty() || lines[i].front() != '#') {
            throw ValidationError("CSV: data after the footer");
        }
        doc.footer.push_back(comment_text(lines[i]));
    }

    doc.content_hash = fnv1a64(render_body(doc));
    if (!declared_hash.empty() && declared_hash != doc.content_hash) {
        throw ValidationError("CSV: content hash mismatch (declared " + declared_hash +
                              ", computed " + doc.content_hash + ")");
    }
    return doc;
}

void write_text_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace gpdwell::io
