#include "bathtub/report.hpp"

#include "bathtub/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace bathtub::report {

namespace {

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string json_escape(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20)
                out += fmt::format("\\u{:04x}", static_cast<int>(c));
            else
                out += c;
        }
    }
    return out + '"';
}

struct CsvVisitor {
    std::string operator()(double v) const { return fixed6(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "1" : "0"; }
    std::string operator()(const std::string& v) const { return csv_escape(v); }
};

struct JsonVisitor {
    std::string operator()(double v) const { return std::isfinite(v) ? sig17(v) : "null"; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return json_escape(v); }
};

} // namespace

std::string fixed6(double value)
{
    if (std::isnan(value)) return "nan";
    std::string s = fmt::format("{:.6f}", value);
    if (s == "-0.000000") s.erase(0, 1);
    return s;
}

std::string sig17(double value)
{
    if (value == 0.0) return "0";
    return fmt::format("{:.17g}", value);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<Cell> row)
{
    if (row.size() != header_.size())
        throw ValidationError("csv row has " + std::to_string(row.size()) + " cells, header has " +
                              std::to_string(header_.size()));
    rows_.push_back(std::move(row));
}

std::string CsvTable::str() const
{
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(header_[i]);
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += std::visit(CsvVisitor{}, row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string CsvTable::json() const
{
    std::string out = "[";
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        out += r ? ",\n  {" : "\n  {";
        for (std::size_t i = 0; i < header_.size(); ++i) {
            if (i) out += ", ";
            out += json_escape(header_[i]) + ": " + std::visit(JsonVisitor{}, rows_[r][i]);
        }
        out += '}';
    }
    return out + (rows_.empty() ? "]\n" : "\n]\n");
}

JsonObject& JsonObject::set(std::string key, Cell value)
{
    for (auto& [k, v] : fields_) {
        if (k == key) {
            v = std::move(value);
            return *this;
        }
    }
    fields_.emplace_back(std::move(key), std::move(value));
    return *this;
}

std::string JsonObject::str() const
{
    std::string out = "{\n";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
        out += "  " + json_escape(fields_[i].first) + ": " + std::visit(JsonVisitor{}, fields_[i].second);
        out += i + 1 < fields_.size() ? ",\n" : "\n";
    }
    return out + "}\n";
}

} // namespace bathtub::report
