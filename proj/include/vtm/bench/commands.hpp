#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "vtm/approximant.hpp"
#include "vtm/bench/csv.hpp"
#include "vtm/bench/run_config.hpp"

namespace vtm::bench {

struct CommandResult {
    nlohmann::json metadata;
    Table table;
};

/// Error against n for one function, per map and constant set.
[[nodiscard]] CommandResult cmd_converge(const RunConfig& config);
/// R(omega; delta) for e^{-2 pi i omega x}, with a resolution-constant footer per method.
[[nodiscard]] CommandResult cmd_resolve(const RunConfig& config);
/// f1, f2, f3 against every requested map, with constants optimized at the largest n.
[[nodiscard]] CommandResult cmd_compare(const RunConfig& config);
/// Grid search of c (E, DE, SDE) or alpha0 (SE) at the largest n; L0 stays fixed.
[[nodiscard]] CommandResult cmd_optimize(const RunConfig& config);

/// Fixed L0 values used when none are configured for the search commands.
[[nodiscard]] std::vector<double> default_L0_values();

struct GridArgmin {
    std::size_t index;
    double value;
};

/// Index of the smallest objective value over `candidates` (taken in the given
/// order, which callers keep ascending). NaN counts as +inf; ties keep the
/// earlier, smaller candidate.
[[nodiscard]] GridArgmin grid_argmin(std::span<const double> objective_values);

/// Rule of `kind` using `value` as its searched constant (alpha0 for SE, c otherwise).
[[nodiscard]] ParameterRule searched_rule(MapKind kind, double value, double L0,
                                          RuleVariant variant);

struct OptimizedRule {
    ParameterRule rule;
    double error;
    std::vector<double> errors;  // one per candidate
};

/// Best searched constant for f at degree n under `kind` with fixed L0.
[[nodiscard]] OptimizedRule optimize_rule(const ComplexFunction& f, MapKind kind, double L0,
                                          std::span<const double> candidates, RuleVariant variant,
                                          int n, int grid, int jobs);

/// Runs task(i) for i in [0, count) on up to `jobs` threads. The exception of
/// the lowest failing index is rethrown after all workers stop.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task);

/// Plot script (gnuplot or Vega-Lite) that reads the CSV at `csv_path`.
[[nodiscard]] std::string plot_script(PlotScript kind, Command command, const std::string& csv_path);

}  // namespace vtm::bench
