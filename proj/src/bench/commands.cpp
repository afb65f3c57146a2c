#include "vtm/bench/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "vtm/analysis.hpp"
#include "vtm/bench/test_functions.hpp"
#include "vtm/errors.hpp"

namespace vtm::bench {

namespace {

using cplx = std::complex<double>;
using json = nlohmann::json;

constexpr const char* kResolutionProxy = "max of R/scaling over the upper half of omega";

Cell integer(long long v) { return static_cast<std::int64_t>(v); }

Cell optional_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

bool uses_c(MapKind kind) { return kind != MapKind::SE; }
bool uses_alpha0(MapKind kind) { return kind == MapKind::SE; }
bool uses_L0(MapKind kind) { return kind == MapKind::SE || kind == MapKind::SDE; }

std::vector<Cell> rule_cells(const ParameterRule& r) {
    return {std::string(vtm::to_string(r.kind)), uses_c(r.kind) ? Cell(r.c) : Cell(),
            uses_alpha0(r.kind) ? Cell(r.alpha0) : Cell(), uses_L0(r.kind) ? Cell(r.L0) : Cell()};
}

void append(std::vector<Cell>& row, std::initializer_list<Cell> cells) {
    row.insert(row.end(), cells.begin(), cells.end());
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        out += (out.empty() ? "" : "; ") + p;
    }
    return out;
}

std::vector<std::string> map_warnings(const MapSpec& map) {
    std::vector<std::string> out;
    if (auto w = map.precision_warning()) {
        out.push_back(*w);
    }
    return out;
}

json base_metadata(const RunConfig& config, Command command) {
    json maps = json::array();
    for (MapKind kind : config.maps) {
        maps.push_back(std::string(vtm::to_string(kind)));
    }
    return json{{"schema_version", kSchemaVersion},
                {"command", std::string(to_string(command))},
                {"rule_variant", std::string(to_string(config.rule_variant))},
                {"tool_version", kToolVersion},
                {"maps", maps},
                {"grid", config.grid}};
}

std::vector<ParameterRule> configured_rules(const RunConfig& config) {
    std::vector<ParameterRule> rules;
    for (MapKind kind : config.maps) {
        switch (kind) {
            case MapKind::E:
                for (double c : config.c) rules.push_back(ParameterRule::exponential(c));
                break;
            case MapKind::DE:
                for (double c : config.c)
                    rules.push_back(ParameterRule::double_exponential(c, config.rule_variant));
                break;
            case MapKind::SE:
                for (double a : config.alpha0)
                    for (double L0 : config.L0)
                        rules.push_back(ParameterRule::slit_exponential(a, L0));
                break;
            case MapKind::SDE:
                for (double c : config.c)
                    for (double L0 : config.L0)
                        rules.push_back(
                            ParameterRule::slit_double_exponential(c, L0, config.rule_variant));
                break;
        }
    }
    return rules;
}

ResolutionScaling scaling_for(MapKind kind) {
    switch (kind) {
        case MapKind::E:
            return ResolutionScaling::OmegaSquared;
        case MapKind::DE:
            return ResolutionScaling::OmegaLogOmega;
        case MapKind::SE:
        case MapKind::SDE:
            return ResolutionScaling::Omega;
    }
    return ResolutionScaling::Omega;
}

// Strip half-width of the map family, used as beta in the rate indices.
double family_beta(MapKind kind) {
    return kind == MapKind::DE ? std::numbers::pi / 2.0 : std::numbers::pi;
}

// Largest violation of psi^{-1}(-L) + psi^{-1}(L) = 1 and psi(psi^{-1}(-L)) = -L.
double map_residual(const MapSpec& map, double L) {
    const double lo = psi_inverse(map, -L);
    const double hi = psi_inverse(map, L);
    double residual = std::abs(lo + hi - 1.0);
    // Round trip on the low side only: hi sits next to 1, where the stored double
    // cannot resolve psi, and symmetry already ties it to lo.
    if (lo > 0.0) {
        residual = std::max(residual, std::abs(psi_forward(map, lo) + L) / std::max(1.0, L));
    }
    return residual;
}

std::vector<double> searched_candidates(const RunConfig& config, MapKind kind) {
    if (uses_alpha0(kind)) {
        return config.alpha0.empty() ? default_alpha0_range() : config.alpha0;
    }
    return config.c.empty() ? default_c_range() : config.c;
}

std::vector<double> fixed_L0(const RunConfig& config, MapKind kind) {
    if (!uses_L0(kind)) {
        return {0.0};
    }
    return config.L0.empty() ? default_L0_values() : config.L0;
}

int budget(const RunConfig& config) { return std::max(1, config.n_schedule.back()); }

}  // namespace

std::vector<double> default_L0_values() { return {0.2, 0.8, 1.5}; }

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task) {
    const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
    std::atomic<std::size_t> next{0};
    std::mutex guard;
    std::size_t failed_index = count;
    std::exception_ptr failure;
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(guard);
                if (i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

GridArgmin grid_argmin(std::span<const double> objective_values) {
    if (objective_values.empty()) {
        throw PreconditionError("grid_argmin: empty search range");
    }
    GridArgmin best{0, std::numeric_limits<double>::infinity()};
    bool found = false;
    for (std::size_t i = 0; i < objective_values.size(); ++i) {
        const double v = std::isnan(objective_values[i]) ? std::numeric_limits<double>::infinity()
                                                         : objective_values[i];
        if (!found || v < best.value) {
            best = {i, v};
            found = true;
        }
    }
    return best;
}

ParameterRule searched_rule(MapKind kind, double value, double L0, RuleVariant variant) {
    switch (kind) {
        case MapKind::E:
            return ParameterRule::exponential(value);
        case MapKind::SE:
            return ParameterRule::slit_exponential(value, L0);
        case MapKind::DE:
            return ParameterRule::double_exponential(value, variant);
        case MapKind::SDE:
            return ParameterRule::slit_double_exponential(value, L0, variant);
    }
    throw PreconditionError("searched_rule: unknown map kind");
}

OptimizedRule optimize_rule(const ComplexFunction& f, MapKind kind, double L0,
                            std::span<const double> candidates, RuleVariant variant, int n,
                            int grid, int jobs) {
    if (candidates.empty()) {
        throw PreconditionError("optimize_rule: empty search range");
    }
    std::vector<double> errors(candidates.size());
    parallel_for(candidates.size(), jobs, [&](std::size_t i) {
        const ParameterRule rule = searched_rule(kind, candidates[i], L0, variant);
        errors[i] = measure_error<cplx>(build_with_rule<cplx>(f, rule, n), f, grid).total;
    });
    const GridArgmin best = grid_argmin(errors);
    return {searched_rule(kind, candidates[best.index], L0, variant), best.value, std::move(errors)};
}

CommandResult cmd_converge(const RunConfig& config) {
    validate(config, Command::Converge);
    const TestFunctionSpec fn = make_test_function(config.function_id, config.function_omega);
    const double tau = fn.known_tau.value_or(1.0);
    const std::vector<ParameterRule> rules = configured_rules(config);

    Table table;
    table.columns = {"map",    "c",        "alpha0",   "L0",          "n",
                     "dof",    "L",        "alpha",    "x_L",         "interior",
                     "endpoint_lo", "endpoint_hi", "total", "predicted_rate", "warnings"};
    const std::size_t per_rule = config.n_schedule.size();
    table.rows.resize(rules.size() * per_rule);
    parallel_for(table.rows.size(), effective_jobs(config), [&](std::size_t i) {
        const ParameterRule& rule = rules[i / per_rule];
        const int n = config.n_schedule[i % per_rule];
        const Parameters params = select_parameters(rule, n);
        const MapSpec map = map_for(rule.kind, params);
        const auto p = build_approximant<cplx>(fn.f, map, params.L, n);
        const ErrorReport err = measure_error<cplx>(p, fn.f, config.grid);
        const double rate = rate_index(rule.kind, {rule.c, rule.alpha0, rule.L0},
                                       family_beta(rule.kind), tau);
        auto row = rule_cells(rule);
        append(row, {integer(n), integer(n + 1), params.L, optional_cell(params.alpha), p.x_L(),
                     err.interior, err.endpoint_lo, err.endpoint_hi, err.total, rate,
                     join(map_warnings(map))});
        table.rows[i] = std::move(row);
    });

    json meta = base_metadata(config, Command::Converge);
    meta["function"] = fn.id;
    meta["function_omega"] = config.function_omega;
    meta["tau"] = tau;
    return {meta, std::move(table)};
}

CommandResult cmd_resolve(const RunConfig& config) {
    validate(config, Command::Resolve);
    const std::vector<ParameterRule> rules = configured_rules(config);
    const std::size_t per_rule = config.omega_schedule.size();
    std::vector<ResolutionRecord> records(rules.size() * per_rule);

    parallel_for(records.size(), effective_jobs(config), [&](std::size_t i) {
        const ParameterRule& rule = rules[i / per_rule];
        const int omega = config.omega_schedule[i % per_rule];
        const TestFunctionSpec fn = make_test_function("osc", omega);
        records[i] = measure_resolution(
            [&](int n) { return build_with_rule<cplx>(fn.f, rule, n); }, omega, config.delta,
            config.n_max, config.grid);
    });

    Table table;
    table.columns = {"map",   "c",     "alpha0", "L0",      "omega",
                     "delta", "R",     "dof",    "L",       "alpha",
                     "achieved_error", "scaling", "ratio_to_scaling", "warnings"};
    for (std::size_t r = 0; r < rules.size(); ++r) {
        const ParameterRule& rule = rules[r];
        const ResolutionScaling scaling = scaling_for(rule.kind);
        for (std::size_t j = 0; j < per_rule; ++j) {
            const ResolutionRecord& rec = records[r * per_rule + j];
            const Parameters params = select_parameters(rule, std::max(rec.R, 1));
            const double scale = resolution_scale(scaling, rec.omega, rule.c);
            std::vector<std::string> warnings = map_warnings(map_for(rule.kind, params));
            if (rec.R < 2 * rec.omega) {
                warnings.push_back("R below the 2 omega Nyquist floor");
            }
            auto row = rule_cells(rule);
            append(row, {integer(rec.omega), rec.delta, integer(rec.R), integer(rec.R + 1), params.L,
                         optional_cell(params.alpha), rec.achieved_error,
                         std::string(to_string(scaling)), scale > 0.0 ? Cell(rec.R / scale) : Cell(),
                         join(warnings)});
            table.rows.push_back(std::move(row));
        }
        json summary{{"summary", "resolution_constant"},
                     {"map", std::string(vtm::to_string(rule.kind))},
                     {"scaling", std::string(to_string(scaling))},
                     {"proxy", kResolutionProxy}};
        if (uses_c(rule.kind)) summary["c"] = rule.c;
        if (uses_alpha0(rule.kind)) summary["alpha0"] = rule.alpha0;
        if (uses_L0(rule.kind)) summary["L0"] = rule.L0;
        try {
            summary["value"] = resolution_constant(
                std::span(records).subspan(r * per_rule, per_rule), scaling, rule.c);
        } catch (const PreconditionError& e) {
            summary["value"] = nullptr;
            summary["note"] = e.what();
        }
        table.footer.push_back(std::move(summary));
    }

    json meta = base_metadata(config, Command::Resolve);
    meta["function"] = "osc";
    meta["delta"] = config.delta;
    meta["n_max"] = config.n_max;
    meta["resolution_proxy"] = kResolutionProxy;
    return {meta, std::move(table)};
}

CommandResult cmd_optimize(const RunConfig& config) {
    validate(config, Command::Optimize);
    const TestFunctionSpec fn = make_test_function(config.function_id, config.function_omega);
    const int n = budget(config);

    Table table;
    table.columns = {"map", "c", "alpha0", "L0", "n", "L", "alpha", "total", "warnings"};
    for (MapKind kind : config.maps) {
        const std::vector<double> candidates = searched_candidates(config, kind);
        for (double L0 : fixed_L0(config, kind)) {
            const OptimizedRule best = optimize_rule(fn.f, kind, L0, candidates, config.rule_variant,
                                                     n, config.grid, effective_jobs(config));
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                const ParameterRule rule = searched_rule(kind, candidates[i], L0, config.rule_variant);
                const Parameters params = select_parameters(rule, n);
                auto row = rule_cells(rule);
                append(row, {integer(n), params.L, optional_cell(params.alpha), best.errors[i],
                             join(map_warnings(map_for(kind, params)))});
                table.rows.push_back(std::move(row));
            }
            json argmin{{"summary", "argmin"},
                        {"map", std::string(vtm::to_string(kind))},
                        {"n", n},
                        {"total", best.error}};
            argmin[uses_alpha0(kind) ? "alpha0" : "c"] = uses_alpha0(kind) ? best.rule.alpha0 : best.rule.c;
            if (uses_L0(kind)) argmin["L0"] = L0;
            table.footer.push_back(std::move(argmin));
        }
    }

    json meta = base_metadata(config, Command::Optimize);
    meta["function"] = fn.id;
    meta["function_omega"] = config.function_omega;
    meta["tie_break"] = "smaller constant";
    return {meta, std::move(table)};
}

CommandResult cmd_compare(const RunConfig& config) {
    validate(config, Command::Compare);
    const int n_opt = budget(config);
    const int jobs = effective_jobs(config);

    struct Method {
        TestFunctionSpec fn;
        ParameterRule rule;
    };
    std::vector<Method> methods;
    for (std::string_view id : {"f1", "f2", "f3"}) {
        const TestFunctionSpec fn = make_test_function(id, config.function_omega);
        for (MapKind kind : config.maps) {
            const std::vector<double> candidates = searched_candidates(config, kind);
            for (double L0 : fixed_L0(config, kind)) {
                const OptimizedRule best = optimize_rule(fn.f, kind, L0, candidates,
                                                         config.rule_variant, n_opt, config.grid, jobs);
                methods.push_back({fn, best.rule});
            }
        }
    }

    Table table;
    table.columns = {"function", "map",         "c",           "alpha0", "L0",
                     "n",        "dof",         "L",           "alpha",  "interior",
                     "endpoint_lo", "endpoint_hi", "total", "map_residual", "warnings"};
    const std::size_t per_method = config.n_schedule.size();
    table.rows.resize(methods.size() * per_method);
    parallel_for(table.rows.size(), jobs, [&](std::size_t i) {
        const Method& m = methods[i / per_method];
        const int n = config.n_schedule[i % per_method];
        const Parameters params = select_parameters(m.rule, std::max(n, 1));
        const MapSpec map = map_for(m.rule.kind, params);
        const auto p = build_approximant<cplx>(m.fn.f, map, params.L, n);
        const ErrorReport err = measure_error<cplx>(p, m.fn.f, config.grid);
        std::vector<Cell> row{m.fn.id};
        auto constants = rule_cells(m.rule);
        row.insert(row.end(), constants.begin(), constants.end());
        append(row, {integer(n), integer(n + 1), params.L, optional_cell(params.alpha), err.interior,
                     err.endpoint_lo, err.endpoint_hi, err.total, map_residual(map, params.L),
                     join(map_warnings(map))});
        table.rows[i] = std::move(row);
    });

    json meta = base_metadata(config, Command::Compare);
    meta["function_omega"] = config.function_omega;
    meta["optimized_at_n"] = n_opt;
    meta["tie_break"] = "smaller constant";
    return {meta, std::move(table)};
}

std::string plot_script(PlotScript kind, Command command, const std::string& csv_path) {
    const bool resolve = command == Command::Resolve;
    const std::string x = resolve ? "omega" : "n";
    const std::string y = resolve ? "ratio_to_scaling" : "total";
    std::ostringstream out;
    if (kind == PlotScript::Gnuplot) {
        out << "set datafile separator ','\n"
            << "set key autotitle columnhead\n"
            << "set xlabel '" << x << "'\n"
            << "set ylabel '" << y << "'\n";
        if (!resolve) {
            out << "set logscale y\n";
        }
        out << "plot '" << csv_path << "' using '" << x << "':'" << y
            << "' skip 1 with linespoints title '" << y << "'\n";
    } else if (kind == PlotScript::Vega) {
        const json spec{
            {"$schema", "https://vega.github.io/schema/vega-lite/v5.json"},
            {"data", {{"url", csv_path}, {"format", {{"type", "csv"}}}}},
            {"mark", "line"},
            {"encoding",
             {{"x", {{"field", x}, {"type", "quantitative"}}},
              {"y", {{"field", y}, {"type", "quantitative"}, {"scale", {{"type", resolve ? "linear" : "log"}}}}},
              {"color", {{"field", "map"}, {"type", "nominal"}}}}}};
        out << spec.dump(2) << '\n';
    }
    return out.str();
}

}  // namespace vtm::bench
