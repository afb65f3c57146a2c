#include "vtm/approximant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "vtm/errors.hpp"
#include "vtm/special_functions.hpp"

namespace vtm {

namespace {

using cplx = std::complex<double>;
using std::numbers::pi;

template <typename T>
bool is_finite(const T& v) {
    if constexpr (std::same_as<T, double>) {
        return std::isfinite(v);
    } else {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    }
}

template <typename T>
T sample(const Function<T>& f, double x, long index) {
    T value;
    try {
        value = f(x);
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "evaluation failed at node " << index << " (x = " << x << "): " << e.what();
        throw EvaluationError(msg.str(), index);
    }
    if (!is_finite(value)) {
        std::ostringstream msg;
        msg << "non-finite value at node " << index << " (x = " << x << ")";
        throw EvaluationError(msg.str(), index);
    }
    return value;
}

// max |f(x) - level| over `count` equispaced points from `near` (inclusive)
// to `far`, where `far` is the true endpoint 0 or 1.
template <typename T>
double endpoint_sup(const Function<T>& f, T level, double near, double far, int count) {
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        const double x = i + 1 == count ? far : near + (far - near) * t;
        T value;
        try {
            value = f(x);
        } catch (const std::exception& e) {
            if (x == far) {
                continue;
            }
            throw EvaluationError(std::string("endpoint error sample failed: ") + e.what(), i);
        }
        if (!is_finite(value)) {
            if (x == far) {
                continue;
            }
            throw EvaluationError("non-finite endpoint error sample", i);
        }
        worst = std::max(worst, std::abs(value - level));
    }
    return worst;
}

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << "ParameterRule: " << name << " must be positive (got " << value << ")";
        throw PreconditionError(msg.str());
    }
}

}  // namespace

std::string_view to_string(RuleVariant variant) noexcept {
    return variant == RuleVariant::Theorem ? "theorem" : "caption";
}

ParameterRule ParameterRule::exponential(double c) {
    ParameterRule rule{.kind = MapKind::E, .c = c};
    rule.validate();
    return rule;
}

ParameterRule ParameterRule::slit_exponential(double alpha0, double L0) {
    ParameterRule rule{.kind = MapKind::SE, .alpha0 = alpha0, .L0 = L0};
    rule.validate();
    return rule;
}

ParameterRule ParameterRule::double_exponential(double c, RuleVariant variant) {
    ParameterRule rule{.kind = MapKind::DE, .c = c, .variant = variant};
    rule.validate();
    return rule;
}

ParameterRule ParameterRule::slit_double_exponential(double c, double L0, RuleVariant variant) {
    ParameterRule rule{.kind = MapKind::SDE, .c = c, .L0 = L0, .variant = variant};
    rule.validate();
    return rule;
}

void ParameterRule::validate() const {
    switch (kind) {
        case MapKind::E:
        case MapKind::DE:
            require_positive(c, "c");
            break;
        case MapKind::SE:
            require_positive(alpha0, "alpha0");
            require_positive(L0, "L0");
            break;
        case MapKind::SDE:
            require_positive(c, "c");
            require_positive(L0, "L0");
            break;
    }
}

Parameters select_parameters(const ParameterRule& rule, double n) {
    rule.validate();
    if (!(n >= 1.0)) {
        throw PreconditionError("select_parameters: n must be at least 1");
    }
    const bool caption = rule.variant == RuleVariant::Caption;
    switch (rule.kind) {
        case MapKind::E:
            return {rule.c * std::sqrt(n), std::nullopt};
        case MapKind::SE:
            return {rule.L0 + 0.5, rule.alpha0 / std::sqrt(n)};
        case MapKind::DE: {
            const double w = lambert_w0(rule.c * n);
            return {caption ? w : 1.0 + w, std::nullopt};
        }
        case MapKind::SDE: {
            const double w = lambert_w0(rule.c * n);
            return {rule.L0 + 0.5, rule.L0 * pi / (caption ? w : 0.5 * pi + w)};
        }
    }
    throw PreconditionError("select_parameters: unknown map kind");
}

MapSpec map_for(MapKind kind, const Parameters& params) { return MapSpec::make(kind, params.alpha); }

template <ExpansionScalar T>
T MappedApproximant<T>::operator()(double x) const {
    return evaluate_approximant(*this, x);
}

template <ExpansionScalar T>
MappedApproximant<T> build_approximant(const Function<T>& f, const MapSpec& map, double L, int n) {
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw PreconditionError("build_approximant: L must be positive and finite");
    }
    if (n < 0) {
        throw PreconditionError("build_approximant: n must be nonnegative");
    }
    const double x_L = psi_inverse(map, -L);
    const T lo = sample(f, x_L, 0);
    const T hi = sample(f, psi_inverse(map, L), n);
    if (n == 0) {
        std::vector<T> c{sample(f, psi_inverse(map, 0.0), 0)};
        return MappedApproximant<T>(map, L, CosineExpansion<T>(std::move(c)), lo, hi, x_L);
    }
    const std::vector<double> nodes = cosine_nodes(n);
    std::vector<T> values(nodes.size());
    values.front() = lo;
    values.back() = hi;
    for (int j = 1; j < n; ++j) {
        values[j] = sample(f, psi_inverse(map, L * nodes[j]), j);
    }
    return MappedApproximant<T>(map, L, discrete_coefficients<T>(values), lo, hi, x_L);
}

template <ExpansionScalar T>
MappedApproximant<T> build_with_rule(const Function<T>& f, const ParameterRule& rule, int n) {
    const Parameters params = select_parameters(rule, std::max(n, 1));
    return build_approximant<T>(f, map_for(rule.kind, params), params.L, n);
}

template <ExpansionScalar T>
T evaluate_approximant(const MappedApproximant<T>& p, double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream msg;
        msg << "evaluate_approximant: x = " << x << " outside [0,1]";
        throw DomainError(msg.str());
    }
    const double x_L = p.x_L();
    if (x < x_L || x == 0.0) {
        return p.endpoint_lo();
    }
    if (x > 1.0 - x_L || x == 1.0) {
        return p.endpoint_hi();
    }
    const double y = std::clamp(psi_forward(p.map(), x) / p.L(), -1.0, 1.0);
    return evaluate_expansion(p.expansion(), y);
}

template <ExpansionScalar T>
ErrorReport measure_error(const MappedApproximant<T>& p, const Function<T>& f, int grid) {
    if (grid < 2) {
        throw PreconditionError("measure_error: grid must be at least 2");
    }
    ErrorReport report;

    const std::vector<T> approx = evaluate_on_uniform_grid(p.expansion(), grid);
    const int m = grid - 1;
    for (int i = 0; i <= m; ++i) {
        const double y = static_cast<double>(2 * i - m) / m;
        const T exact = sample(f, psi_inverse(p.map(), p.L() * y), i);
        report.interior = std::max(report.interior, std::abs(exact - approx[i]));
    }

    const double x_L = p.x_L();
    const int count = std::max(32, static_cast<int>(std::ceil(grid * x_L)));
    report.endpoint_lo = endpoint_sup(f, p.endpoint_lo(), x_L, 0.0, count);
    report.endpoint_hi = endpoint_sup(f, p.endpoint_hi(), 1.0 - x_L, 1.0, count);
    report.total = std::max({report.interior, report.endpoint_lo, report.endpoint_hi});
    return report;
}

template class MappedApproximant<double>;
template class MappedApproximant<cplx>;
template MappedApproximant<double> build_approximant(const Function<double>&, const MapSpec&,
                                                     double, int);
template MappedApproximant<cplx> build_approximant(const Function<cplx>&, const MapSpec&, double,
                                                   int);
template MappedApproximant<double> build_with_rule(const Function<double>&, const ParameterRule&,
                                                   int);
template MappedApproximant<cplx> build_with_rule(const Function<cplx>&, const ParameterRule&, int);
template double evaluate_approximant(const MappedApproximant<double>&, double);
template cplx evaluate_approximant(const MappedApproximant<cplx>&, double);
template ErrorReport measure_error(const MappedApproximant<double>&, const Function<double>&, int);
template ErrorReport measure_error(const MappedApproximant<cplx>&, const Function<cplx>&, int);

}  // namespace vtm
