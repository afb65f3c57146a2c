#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace vtm::bench {

/// Empty, text, integer or real. Reals are written in shortest round-trip form.
using Cell = std::variant<std::monostate, std::string, std::int64_t, double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Trailing `#`-prefixed JSON lines (summaries), written after the rows.
    std::vector<nlohmann::json> footer;
};

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

[[nodiscard]] std::string format_cell(const Cell& cell);

/// Quotes a field per RFC 4180 when it holds a comma, quote, CR or LF.
[[nodiscard]] std::string escape_field(const std::string& field);

/// `#` + compact JSON with sorted keys, then the header, the rows and the
/// footer, one per line.
void write_csv(std::ostream& out, const nlohmann::json& metadata, const Table& table);

}  // namespace vtm::bench
