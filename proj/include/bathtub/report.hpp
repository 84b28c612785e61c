#pragma once

// Deterministic text emission. CSV numbers use 6 fixed decimals, JSON numbers
// 17 significant digits; LF line endings throughout.

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bathtub::report {

std::string fixed6(double value);
std::string sig17(double value);

using Cell = std::variant<double, long long, bool, std::string>;

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<Cell> row);
    const std::vector<std::string>& header() const noexcept { return header_; }
    std::size_t rows() const noexcept { return rows_.size(); }
    std::string str() const;
    /// Array of objects keyed by header, numbers at 17 significant digits.
    std::string json() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

/// Flat JSON object with insertion-ordered keys.
class JsonObject {
public:
    JsonObject& set(std::string key, Cell value);
    std::string str() const;

private:
    std::vector<std::pair<std::string, Cell>> fields_;
};

} // namespace bathtub::report
