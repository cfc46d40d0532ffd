// SPDX-License-Identifier: Apache-2.0
#include "kinetica/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kinetica/types.hpp"
#include "kinetica/version.hpp"

namespace kinetica {

namespace {

std::string format_double(double v) {
    // %.17g round-trips every finite double; JSON needs spelled-out non-finite
    // values, CSV keeps the C forms (inf/nan) which are unambiguous in a cell.
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

bool needs_quotes(const std::string& s) {
    return s.find_first_of(",\"\r\n") != std::string::npos;
}

std::string csv_quote(const std::string& s) {
    if (!needs_quotes(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string format_csv(const CsvTable& table) {
    std::string out;
    auto append_row = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += "\r\n";
    };
    std::vector<std::string> cells;
    cells.reserve(table.header.size());
    for (const std::string& h : table.header) cells.push_back(csv_quote(h));
    append_row(cells);
    for (const CsvRow& row : table.rows) {
        if (row.size() != table.header.size())
            throw Error("format_csv: row width does not match the header");
        cells.clear();
        for (const CsvCell& cell : row) {
            if (std::holds_alternative<std::string>(cell))
                cells.push_back(csv_quote(std::get<std::string>(cell)));
            else if (std::holds_alternative<double>(cell))
                cells.push_back(format_double(std::get<double>(cell)));
            else
                cells.push_back(std::to_string(std::get<std::int64_t>(cell)));
        }
        append_row(cells);
    }
    return out;
}

void write_csv(const std::string& path, const CsvTable& table) {
    write_text_file(path, format_csv(table));
}

std::string json_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (unsigned char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buffer[8];
                    std::snprintf(buffer, sizeof buffer, "\\u%04x", c);
                    out += buffer;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

namespace {

std::string json_number(double v) {
    // JSON has no inf/nan literals; encode them as strings so documents stay
    // parseable and the values stay visible.
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    return format_double(v);
}

}  // namespace

void JsonObject::set(const std::string& key, const std::string& value) {
    Field f;
    f.key = key;
    f.kind = Kind::String;
    f.string_value = value;
    fields_.push_back(std::move(f));
}

void JsonObject::set(const std::string& key, double value) {
    Field f;
    f.key = key;
    f.kind = Kind::Number;
    f.number_value = value;
    fields_.push_back(std::move(f));
}

void JsonObject::set(const std::string& key, std::int64_t value) {
    Field f;
    f.key = key;
    f.kind = Kind::Integer;
    f.integer_value = value;
    fields_.push_back(std::move(f));
}

void JsonObject::set(const std::string& key, bool value) {
    Field f;
    f.key = key;
    f.kind = Kind::Boolean;
    f.boolean_value = value;
    fields_.push_back(std::move(f));
}

void JsonObject::set(const std::string& key, const std::vector<double>& values) {
    Field f;
    f.key = key;
    f.kind = Kind::NumberArray;
    f.array_value = values;
    fields_.push_back(std::move(f));
}

void JsonObject::set_object(const std::string& key, const JsonObject& value) {
    Field f;
    f.key = key;
    f.kind = Kind::Object;
    f.object_value = std::make_shared<JsonObject>(value);
    fields_.push_back(std::move(f));
}

std::string JsonObject::dump(int indent) const { return dump_inner(indent, 0) + "\n"; }

std::string JsonObject::dump_inner(int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
    std::string out = "{";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
        const Field& f = fields_[i];
        out += i ? ",\n" : "\n";
        out += pad + "\"" + json_escape(f.key) + "\": ";
        switch (f.kind) {
            case Kind::String: out += "\"" + json_escape(f.string_value) + "\""; break;
            case Kind::Number: out += json_number(f.number_value); break;
            case Kind::Integer: out += std::to_string(f.integer_value); break;
            case Kind::Boolean: out += f.boolean_value ? "true" : "false"; break;
            case Kind::NumberArray: {
                out += "[";
                for (std::size_t k = 0; k < f.array_value.size(); ++k) {
                    if (k) out += ", ";
                    out += json_number(f.array_value[k]);
                }
                out += "]";
                break;
            }
            case Kind::Object:
                out += f.object_value ? f.object_value->dump_inner(indent, depth + 1) : "{}";
                break;
        }
    }
    out += fields_.empty() ? "}" : "\n" + close_pad + "}";
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open for reading: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create directory " + dir + ": " + ec.message());
}

JsonObject run_metadata(const std::string& scenario, const std::string& config_hash_hex,
                        std::uint64_t seed, int threads) {
    JsonObject meta;
    meta.set("library", std::string("kinetica ") + version_string);
    meta.set("scenario", scenario);
    meta.set("config_hash", config_hash_hex);
    meta.set("seed", static_cast<std::int64_t>(seed));
    meta.set("threads", static_cast<std::int64_t>(threads));
    return meta;
}

}  // namespace kinetica
