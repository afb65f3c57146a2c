#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string_view>

#include "vtm/cosine_expansion.hpp"
#include "vtm/maps.hpp"

namespace vtm {

/// Closed form of the double-exponential parameter rules. Theorem (default):
/// L = 1 + W(cn) and alpha = L0 pi / (pi/2 + W(cn)). Caption: L = W(cn) and
/// alpha = L0 pi / W(cn).
enum class RuleVariant { Theorem, Caption };

[[nodiscard]] std::string_view to_string(RuleVariant variant) noexcept;

/// Constants that fix the truncation L (and alpha) as functions of the degree n.
///
///   E   : L = c sqrt(n)
///   SE  : L = L0 + 1/2,  alpha = alpha0 / sqrt(n)
///   DE  : L = 1 + W(cn)
///   SDE : L = L0 + 1/2,  alpha = L0 pi / (pi/2 + W(cn))
struct ParameterRule {
    MapKind kind = MapKind::E;
    double c = 0.0;
    double alpha0 = 0.0;
    double L0 = 0.0;
    RuleVariant variant = RuleVariant::Theorem;

    [[nodiscard]] static ParameterRule exponential(double c);
    [[nodiscard]] static ParameterRule slit_exponential(double alpha0, double L0);
    [[nodiscard]] static ParameterRule double_exponential(
        double c, RuleVariant variant = RuleVariant::Theorem);
    [[nodiscard]] static ParameterRule slit_double_exponential(
        double c, double L0, RuleVariant variant = RuleVariant::Theorem);

    /// Throws PreconditionError when a constant the kind needs is not positive.
    void validate() const;
};

struct Parameters {
    double L;
    std::optional<double> alpha;
};

/// L (and alpha for SE/SDE) for degree n >= 1. n is real so that closed-form
/// checks such as n = e can be expressed.
[[nodiscard]] Parameters select_parameters(const ParameterRule& rule, double n);

[[nodiscard]] MapSpec map_for(MapKind kind, const Parameters& params);

template <ExpansionScalar T>
using Function = std::function<T(double)>;
using RealFunction = Function<double>;
using ComplexFunction = Function<std::complex<double>>;

/// The realized approximation of f on [0,1]: constant F_L(-1) on [0, x_L),
/// the cosine expansion of F_L(y) = f(psi^{-1}(L y)) in between, and constant
/// F_L(1) on (1 - x_L, 1]. Immutable once built.
template <ExpansionScalar T>
class MappedApproximant {
public:
    MappedApproximant(MapSpec map, double L, CosineExpansion<T> expansion, T endpoint_lo,
                      T endpoint_hi, double x_L)
        : map_(map),
          L_(L),
          expansion_(std::move(expansion)),
          endpoint_lo_(endpoint_lo),
          endpoint_hi_(endpoint_hi),
          x_L_(x_L) {}

    [[nodiscard]] const MapSpec& map() const noexcept { return map_; }
    [[nodiscard]] double L() const noexcept { return L_; }
    [[nodiscard]] int degree() const noexcept { return expansion_.degree(); }
    [[nodiscard]] const CosineExpansion<T>& expansion() const noexcept { return expansion_; }
    [[nodiscard]] T endpoint_lo() const noexcept { return endpoint_lo_; }
    [[nodiscard]] T endpoint_hi() const noexcept { return endpoint_hi_; }
    /// psi^{-1}(-L); zero once the map saturates in double precision.
    [[nodiscard]] double x_L() const noexcept { return x_L_; }

    [[nodiscard]] T operator()(double x) const;

private:
    MapSpec map_;
    double L_;
    CosineExpansion<T> expansion_;
    T endpoint_lo_;
    T endpoint_hi_;
    double x_L_;
};

/// Samples F_L at the n+1 cosine nodes and forms the discrete expansion.
/// n = 0 gives the constant F_L(0). Failures of f are rethrown as
/// EvaluationError carrying the node index.
template <ExpansionScalar T>
[[nodiscard]] MappedApproximant<T> build_approximant(const Function<T>& f, const MapSpec& map,
                                                     double L, int n);

/// build_approximant with L and alpha taken from the rule at degree n.
template <ExpansionScalar T>
[[nodiscard]] MappedApproximant<T> build_with_rule(const Function<T>& f, const ParameterRule& rule,
                                                   int n);

template <ExpansionScalar T>
[[nodiscard]] T evaluate_approximant(const MappedApproximant<T>& p, double x);

/// Uniform error split into the interior (expansion) part and the two
/// constant-extension parts near x = 0 and x = 1.
struct ErrorReport {
    double interior = 0.0;
    double endpoint_lo = 0.0;
    double endpoint_hi = 0.0;
    double total = 0.0;
};

inline constexpr int kDefaultErrorGrid = 20000;

/// Discrete sup-norms of the three error parts: `grid` equispaced y in [-1,1]
/// for the interior, and max(32, ceil(grid * x_L)) equispaced x on each of
/// [0, x_L] and [1 - x_L, 1]. Samples of f that are not finite exactly at
/// x = 0 or x = 1 are skipped.
template <ExpansionScalar T>
[[nodiscard]] ErrorReport measure_error(const MappedApproximant<T>& p, const Function<T>& f,
                                        int grid = kDefaultErrorGrid);

}  // namespace vtm
