#pragma once

#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <string_view>

#include "vtm/approximant.hpp"
#include "vtm/maps.hpp"

namespace vtm {

/// Quantities describing F on the strip of half-width beta around [-L, L]:
/// M_psi bounds |F| on the strip, N_psi is the Hoelder constant of f with
/// exponent tau, and C_psi = sup |psi^{-1}(s)| over |s + L| <= beta.
struct BoundParams {
    double beta = 1.0;
    double tau = 1.0;
    double M_psi = 0.0;
    double N_psi = 0.0;
    double C_psi = 0.0;

    /// Throws PreconditionError unless beta > 0, 0 < tau <= 1 and the rest >= 0.
    void validate() const;
};

/// 3 N b^{-1} C^tau + 114 M b^{-2} n exp(-beta n pi / (2L)) with b = min(beta, 1).
/// Requires L <= n.
[[nodiscard]] double general_bound(const BoundParams& p, int n, double L);

struct RateConstants {
    double c = 0.0;
    double alpha0 = 0.0;
    double L0 = 0.0;
};

/// The two competing exponential factors behind a rate index.
struct RateBranches {
    double first;
    double second;

    [[nodiscard]] double slower() const noexcept;  // min
    [[nodiscard]] double faster() const noexcept;  // max
};

[[nodiscard]] RateBranches rate_branches(MapKind kind, const RateConstants& k, double beta,
                                         double tau);

/// Root-exponential index rho (error ~ rho^{-sqrt n} for E and SE, rho^{-n/log n}
/// for DE and SDE). E, SE and DE take the slower branch. SDE returns the larger
/// branch, as published; use rate_branches(...).slower() for the other reading.
[[nodiscard]] double rate_index(MapKind kind, const RateConstants& k, double beta, double tau);

/// H(t) = t arccos(1/sqrt t) - sqrt(t - 1) for t >= 1, and 0 below.
[[nodiscard]] double resolution_H(double t);

/// Crude constant multiplying both resolution error terms for the E map.
inline constexpr double kBoundPrefactorA = 114.0 * std::numbers::pi * std::numbers::pi;

/// Two error terms, without any shared prefactor.
struct ResolutionTerms {
    double interior;
    double endpoint;
};

/// Terms of the resolution bound for e^{-2 pi i omega x} under the E map with
/// L = c sqrt(n), valid for n > n* = c^2 omega^2 and omega >= pi + log 2.
/// Multiply their sum by kBoundPrefactorA for the full bound.
[[nodiscard]] ResolutionTerms psi_e_resolution_bound(double omega, int n, double c);

/// exp(alpha0 pi (2 omega - n/(2 L0 + 1)) / sqrt n) and omega exp(-pi L0 sqrt(n) / alpha0).
[[nodiscard]] ResolutionTerms psi_se_resolution_terms(double omega, int n, double alpha0,
                                                      double L0);

struct ResolutionRecord {
    int omega = 0;
    double delta = 0.0;
    int R = 0;
    double achieved_error = 0.0;
};

/// Outcome of a budget search.
struct BudgetHit {
    int n;
    double error;
};

/// Smallest n on the search schedule with error(n) <= target: grow n by a
/// factor 1.25 (at least +1) from n_min until the target is met, then rescan
/// the last bracket in steps of max(1, bracket/64). A candidate is accepted
/// only if error(n + step) <= target as well (when n + step <= n_max).
/// Throws BudgetExceeded when nothing up to n_max qualifies.
[[nodiscard]] BudgetHit smallest_budget(const std::function<double(int)>& error, double target,
                                        int n_max, int n_min = 1);

/// Error grid used by budget searches: never coarser than four points per degree.
[[nodiscard]] constexpr int resolving_grid(int grid, int n) noexcept {
    return grid > 4 * n ? grid : 4 * n;
}

using ComplexBuilder = std::function<MappedApproximant<std::complex<double>>(int n)>;

/// delta-resolution R(omega; delta) of the method `builder` for e^{-2 pi i omega x},
/// with R the cosine degree n. Errors are measured on max(grid, 4n) points so
/// the check never samples more coarsely than the expansion it tests.
[[nodiscard]] ResolutionRecord measure_resolution(const ComplexBuilder& builder, int omega,
                                                  double delta, int n_max,
                                                  int grid = kDefaultErrorGrid);

enum class ResolutionScaling { Omega, OmegaSquared, OmegaLogOmega };

[[nodiscard]] std::string_view to_string(ResolutionScaling scaling) noexcept;

/// omega, omega^2 or omega log(c omega).
[[nodiscard]] double resolution_scale(ResolutionScaling scaling, double omega, double c = 1.0);

/// Finite-sample stand-in for limsup R/scaling: the max of R/scaling(omega)
/// over the upper half of the records by omega. Needs at least 3 records.
[[nodiscard]] double resolution_constant(std::span<const ResolutionRecord> records,
                                         ResolutionScaling scaling, double c = 1.0);

}  // namespace vtm
