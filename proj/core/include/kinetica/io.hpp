// SPDX-License-Identifier: Apache-2.0
//! \file io.hpp
//! Output writers: RFC-4180 CSV tables with full-precision numerics and a
//! small JSON summary emitter. Every file embeds the library version and the
//! config hash so a result can always be traced to its inputs.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace kinetica {

/// One CSV cell: text or number. Numbers print with "%.17g" so a double
/// round-trips exactly; text is quoted per RFC 4180 when needed.
using CsvCell = std::variant<std::string, double, std::int64_t>;
using CsvRow = std::vector<CsvCell>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
};

std::string format_csv(const CsvTable& table);
void write_csv(const std::string& path, const CsvTable& table);

/// Minimal JSON document builder: flat object of scalars, arrays of numbers,
/// and string fields, which is all the run summaries need.
class JsonObject {
  public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, std::int64_t value);
    void set(const std::string& key, bool value);
    void set(const std::string& key, const std::vector<double>& values);
    void set_object(const std::string& key, const JsonObject& value);

    std::string dump(int indent = 2) const;

  private:
    enum class Kind { String, Number, Integer, Boolean, NumberArray, Object };
    struct Field {
        std::string key;
        Kind kind;
        std::string string_value;
        double number_value = 0.0;
        std::int64_t integer_value = 0;
        bool boolean_value = false;
        std::vector<double> array_value;
        std::shared_ptr<JsonObject> object_value;
    };
    std::vector<Field> fields_;  ///< insertion order preserved
    std::string dump_inner(int indent, int depth) const;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Creates `dir` (and parents) if missing; throws Error on failure.
void ensure_directory(const std::string& dir);

std::string json_escape(const std::string& text);

/// Standard metadata block (version, config hash, seed, scenario) attached
/// to every summary.
JsonObject run_metadata(const std::string& scenario, const std::string& config_hash_hex,
                        std::uint64_t seed, int threads);

}  // namespace kinetica
