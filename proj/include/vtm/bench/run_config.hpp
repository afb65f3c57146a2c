#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vtm/approximant.hpp"
#include "vtm/maps.hpp"

namespace vtm::bench {

enum class Command { Converge, Resolve, Compare, Optimize };

[[nodiscard]] std::string_view to_string(Command command) noexcept;

/// Invalid configuration; `field()` names the offending setting, e.g. "omega[2]".
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

enum class PlotScript { None, Gnuplot, Vega };

struct RunConfig {
    std::vector<MapKind> maps{MapKind::E};
    /// Candidate constants. Empty lists fall back to per-command defaults.
    std::vector<double> c;
    std::vector<double> alpha0;
    std::vector<double> L0;
    RuleVariant rule_variant = RuleVariant::Theorem;

    std::string function_id = "cbrt";
    /// Frequency for the parameterized functions f1 and osc.
    double function_omega = 400.0;

    std::vector<int> n_schedule;
    std::vector<int> omega_schedule;
    double delta = 1e-2;
    int grid = kDefaultErrorGrid;
    int n_max = 100000;

    std::string out;  // empty: standard output
    int jobs = 0;     // 0: hardware concurrency
    PlotScript plot = PlotScript::None;
};

/// Default search ranges for cmd_optimize.
[[nodiscard]] std::vector<double> default_c_range();       // 20 log-spaced in [0.05, 5]
[[nodiscard]] std::vector<double> default_alpha0_range();  // 20 linear in [0.1, 4]

/// Throws ConfigError naming the first offending field.
void validate(const RunConfig& config, Command command);

/// "a,b,c" or "start:stop:step" (inclusive) into an increasing integer list.
[[nodiscard]] std::vector<int> parse_int_schedule(std::string_view text, std::string_view field);
/// Comma-separated reals.
[[nodiscard]] std::vector<double> parse_real_list(std::string_view text, std::string_view field);
/// Comma-separated map kinds, or "all".
[[nodiscard]] std::vector<MapKind> parse_map_list(std::string_view text);
[[nodiscard]] RuleVariant parse_rule_variant(std::string_view text);

[[nodiscard]] int effective_jobs(const RunConfig& config) noexcept;

}  // namespace vtm::bench
