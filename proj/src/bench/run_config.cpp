#include "vtm/bench/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <thread>

#include "vtm/bench/test_functions.hpp"

namespace vtm::bench {

namespace {

std::string indexed(std::string_view field, std::size_t i) {
    std::ostringstream out;
    out << field << '[' << i << ']';
    return out.str();
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view text, const std::string& field) {
    text = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(field, "cannot parse '" + std::string(text) + "' as a number");
    }
    return value;
}

template <typename T>
void require_increasing(const std::vector<T>& values, std::string_view field) {
    if (values.empty()) {
        throw ConfigError(std::string(field), "schedule is empty");
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            throw ConfigError(indexed(field, i), "schedule must be strictly increasing");
        }
    }
}

void require_positive(const std::vector<double>& values, std::string_view field) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw ConfigError(indexed(field, i), "must be positive and finite");
        }
    }
}

bool needs(MapKind kind, std::string_view constant) {
    switch (kind) {
        case MapKind::E:
        case MapKind::DE:
            return constant == "c";
        case MapKind::SE:
            return constant == "alpha0" || constant == "L0";
        case MapKind::SDE:
            return constant == "c" || constant == "L0";
    }
    return false;
}

}  // namespace

std::string_view to_string(Command command) noexcept {
    switch (command) {
        case Command::Converge:
            return "converge";
        case Command::Resolve:
            return "resolve";
        case Command::Compare:
            return "compare";
        case Command::Optimize:
            return "optimize";
    }
    return "?";
}

std::vector<double> default_c_range() {
    std::vector<double> values(20);
    const double lo = std::log(0.05);
    const double hi = std::log(5.0);
    for (int i = 0; i < 20; ++i) {
        values[i] = std::exp(lo + (hi - lo) * i / 19.0);
    }
    return values;
}

std::vector<double> default_alpha0_range() {
    std::vector<double> values(20);
    for (int i = 0; i < 20; ++i) {
        values[i] = 0.1 + (4.0 - 0.1) * i / 19.0;
    }
    return values;
}

void validate(const RunConfig& config, Command command) {
    if (config.maps.empty()) {
        throw ConfigError("map", "at least one map is required");
    }
    require_positive(config.c, "c");
    require_positive(config.alpha0, "alpha0");
    require_positive(config.L0, "L0");

    // Converge and resolve use the constants as given; compare and optimize
    // fall back to default search ranges and fixed L0 values.
    const bool searches = command == Command::Compare || command == Command::Optimize;
    for (MapKind kind : config.maps) {
        for (std::string_view constant : {"c", "alpha0", "L0"}) {
            if (!needs(kind, constant)) continue;
            const auto& list = constant == "c" ? config.c : constant == "alpha0" ? config.alpha0 : config.L0;
            if (list.empty() && !searches) {
                throw ConfigError(std::string(constant),
                                  "map " + std::string(vtm::to_string(kind)) + " requires --" +
                                      std::string(constant));
            }
        }
    }

    const auto& ids = test_function_ids();
    if (command != Command::Resolve && command != Command::Compare &&
        std::find(ids.begin(), ids.end(), config.function_id) == ids.end()) {
        throw ConfigError("function", "unknown test function '" + config.function_id + "'");
    }
    if (!(config.function_omega >= 0.0) || !std::isfinite(config.function_omega)) {
        throw ConfigError("function_omega", "must be nonnegative and finite");
    }
    if (config.grid < 2) {
        throw ConfigError("grid", "must be at least 2");
    }
    if (config.n_max < 1) {
        throw ConfigError("n_max", "must be positive");
    }
    if (config.jobs < 0) {
        throw ConfigError("jobs", "must be nonnegative");
    }

    if (command == Command::Resolve) {
        require_increasing(config.omega_schedule, "omega");
        for (std::size_t i = 0; i < config.omega_schedule.size(); ++i) {
            if (config.omega_schedule[i] < 0) {
                throw ConfigError(indexed("omega", i), "frequencies must be nonnegative");
            }
        }
        if (!(config.delta > 0.0 && config.delta < 1.0)) {
            throw ConfigError("delta", "must lie in (0, 1)");
        }
    } else {
        require_increasing(config.n_schedule, "n");
        for (std::size_t i = 0; i < config.n_schedule.size(); ++i) {
            const int n = config.n_schedule[i];
            const int lowest = command == Command::Compare ? 0 : 1;
            if (n < lowest || n > config.n_max) {
                std::ostringstream msg;
                msg << "must lie in [" << lowest << ", n_max = " << config.n_max << "]";
                throw ConfigError(indexed("n", i), msg.str());
            }
        }
    }
}

std::vector<int> parse_int_schedule(std::string_view text, std::string_view field) {
    const std::string name(field);
    std::vector<int> values;
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) {
            throw ConfigError(name, "range must be start:stop:step");
        }
        const int start = parse_number<int>(parts[0], name);
        const int stop = parse_number<int>(parts[1], name);
        const int step = parse_number<int>(parts[2], name);
        if (step <= 0) {
            throw ConfigError(name, "range step must be positive");
        }
        for (long v = start; v <= stop; v += step) {
            values.push_back(static_cast<int>(v));
        }
    } else {
        const auto parts = split(text, ',');
        for (std::size_t i = 0; i < parts.size(); ++i) {
            values.push_back(parse_number<int>(parts[i], indexed(field, i)));
        }
    }
    require_increasing(values, field);
    return values;
}

std::vector<double> parse_real_list(std::string_view text, std::string_view field) {
    std::vector<double> values;
    const auto parts = split(text, ',');
    for (std::size_t i = 0; i < parts.size(); ++i) {
        values.push_back(parse_number<double>(parts[i], indexed(field, i)));
    }
    return values;
}

std::vector<MapKind> parse_map_list(std::string_view text) {
    if (trim(text) == "all") {
        return {MapKind::E, MapKind::SE, MapKind::DE, MapKind::SDE};
    }
    std::vector<MapKind> maps;
    const auto parts = split(text, ',');
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto kind = parse_map_kind(trim(parts[i]));
        if (!kind) {
            throw ConfigError(indexed("map", i), "unknown map '" + std::string(parts[i]) + "'");
        }
        if (std::find(maps.begin(), maps.end(), *kind) != maps.end()) {
            throw ConfigError(indexed("map", i), "duplicate map");
        }
        maps.push_back(*kind);
    }
    return maps;
}

RuleVariant parse_rule_variant(std::string_view text) {
    if (text == "theorem") return RuleVariant::Theorem;
    if (text == "caption") return RuleVariant::Caption;
    throw ConfigError("rule_variant", "expected 'theorem' or 'caption'");
}

int effective_jobs(const RunConfig& config) noexcept {
    if (config.jobs > 0) {
        return config.jobs;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace vtm::bench
