#include "render.hpp"

#include "elliptica/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace elliptica::cli {

namespace {

void write_string(std::string &out, const std::string &s)
{
    out += '"';
    for (const char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            }
            else {
                out += c;
            }
        }
    }
    out += '"';
}

bool is_scalar(const json &j)
{
    return !j.is_array() && !j.is_object();
}

void write_value(std::string &out, const json &j, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += inner;
            write_string(out, it.key());
            out += ": ";
            write_value(out, it.value(), indent + 2);
        }
        out += "\n" + pad + "}";
    }
    else if (j.is_array()) {
        if (j.empty()) {
            out += "[]";
            return;
        }
        const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) {
                    out += ", ";
                }
                write_value(out, j[i], indent);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) {
                out += ",\n";
            }
            out += inner;
            write_value(out, j[i], indent + 2);
        }
        out += "\n" + pad + "]";
    }
    else if (j.is_string()) {
        write_string(out, j.get<std::string>());
    }
    else if (j.is_boolean()) {
        out += j.get<bool>() ? "true" : "false";
    }
    else if (j.is_number_integer()) {
        out += j.dump();
    }
    else if (j.is_number_float()) {
        const double x = j.get<double>();
        if (std::isfinite(x)) {
            out += format_double(x);
        }
        else {
            write_string(out, format_double(x));
        }
    }
    else {
        out += "null";
    }
}

std::string csv_cell(const json &j)
{
    if (j.is_number_float()) {
        return format_double(j.get<double>());
    }
    if (j.is_string()) {
        return j.get<std::string>();
    }
    return j.dump();
}

} // namespace

Format parse_format(const std::string &name)
{
    if (name == "json") {
        return Format::json;
    }
    if (name == "csv") {
        return Format::csv;
    }
    if (name == "svg") {
        return Format::svg;
    }
    throw Error(ErrorKind::unsupported_format, "render_report", "unknown format " + name);
}

std::string format_double(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string render_json(const json &doc)
{
    std::string out;
    write_value(out, doc, 0);
    out += '\n';
    return out;
}

std::string render_csv(const Table &table)
{
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out += (i ? "," : "") + table.header[i];
    }
    out += '\n';
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + csv_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_report(const Report &report, Format format, const std::string &subcommand)
{
    switch (format) {
    case Format::json:
        return render_json(report.document);
    case Format::csv:
        if (!report.table) {
            throw Error(ErrorKind::unsupported_format, "render_report", "csv output is not available for " + subcommand);
        }
        return render_csv(*report.table);
    case Format::svg:
        if (!report.svg) {
            throw Error(ErrorKind::unsupported_format, "render_report", "svg output is not available for " + subcommand);
        }
        return report.svg();
    }
    return {};
}

} // namespace elliptica::cli
