#pragma once

#include "elliptica/serialize.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace elliptica::cli {

enum class Format { json, csv, svg };

Format parse_format(const std::string &name);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<json>> rows;
};

/// Output of one subcommand in every form it supports.
struct Report {
    json document;
    std::optional<Table> table;
    std::function<std::string()> svg;
};

// 17 significant digits, "-0" kept, non-finite values as strings.
std::string format_double(double x);

// Sorted keys, two-space indent, trailing newline.
std::string render_json(const json &doc);
std::string render_csv(const Table &table);

// Throws unsupported_format when the report has no such form.
std::string render_report(const Report &report, Format format, const std::string &subcommand);

} // namespace elliptica::cli
