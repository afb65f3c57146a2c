#include "vtm/bench/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace vtm::bench {

std::string format_cell(const Cell& cell) {
    if (std::holds_alternative<std::monostate>(cell)) {
        return {};
    }
    if (const auto* text = std::get_if<std::string>(&cell)) {
        return escape_field(*text);
    }
    if (const auto* integer = std::get_if<std::int64_t>(&cell)) {
        return std::to_string(*integer);
    }
    const double value = std::get<double>(cell);
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    std::array<char, 32> buffer{};
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    if (result.ec != std::errc{}) {
        throw std::runtime_error("format_cell: to_chars failed");
    }
    return std::string(buffer.data(), result.ptr);
}

std::string escape_field(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) {
        return field;
    }
    std::string quoted = "\"";
    for (char ch : field) {
        if (ch == '"') {
            quoted += '"';
        }
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

void write_csv(std::ostream& out, const nlohmann::json& metadata, const Table& table) {
    // nlohmann::json objects keep keys sorted, so the line is stable.
    out << '#' << metadata.dump() << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << escape_field(table.columns[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::logic_error("write_csv: row width does not match the header");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_cell(row[i]);
        }
        out << '\n';
    }
    for (const auto& line : table.footer) {
        out << '#' << line.dump() << '\n';
    }
}

}  // namespace vtm::bench
