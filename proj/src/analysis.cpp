#include "vtm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "vtm/errors.hpp"

namespace vtm {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

constexpr double kGrowth = 1.25;
constexpr int kRefineDivisions = 64;

}  // namespace

void BoundParams::validate() const {
    if (!(beta > 0.0)) {
        throw PreconditionError("BoundParams: beta must be positive");
    }
    if (!(tau > 0.0 && tau <= 1.0)) {
        throw PreconditionError("BoundParams: tau must lie in (0, 1]");
    }
    if (!(M_psi >= 0.0 && N_psi >= 0.0 && C_psi >= 0.0)) {
        throw PreconditionError("BoundParams: M_psi, N_psi, C_psi must be nonnegative");
    }
}

double general_bound(const BoundParams& p, int n, double L) {
    p.validate();
    if (n < 1) {
        throw PreconditionError("general_bound: n must be positive");
    }
    if (!(L > 0.0)) {
        throw PreconditionError("general_bound: L must be positive");
    }
    if (L > n) {
        std::ostringstream msg;
        msg << "general_bound: requires L <= n (L = " << L << ", n = " << n << ")";
        throw PreconditionError(msg.str());
    }
    const double b = std::min(p.beta, 1.0);
    const double hoelder = p.N_psi == 0.0 ? 0.0 : 3.0 * p.N_psi / b * std::pow(p.C_psi, p.tau);
    const double spectral =
        p.M_psi == 0.0 ? 0.0 : 114.0 * p.M_psi / (b * b) * n * std::exp(-p.beta * n * pi / (2.0 * L));
    return hoelder + spectral;
}

double RateBranches::slower() const noexcept { return std::min(first, second); }
double RateBranches::faster() const noexcept { return std::max(first, second); }

RateBranches rate_branches(MapKind kind, const RateConstants& k, double beta, double tau) {
    switch (kind) {
        case MapKind::E:
            return {std::exp(beta * pi / (2.0 * k.c)), std::exp(tau * k.c)};
        case MapKind::SE:
            return {std::exp(k.alpha0 * pi / (2.0 * k.L0 + 1.0)), std::exp(tau * pi * k.L0 / k.alpha0)};
        case MapKind::DE:
            return {std::exp(beta * pi / 2.0), std::exp(tau * pi * k.c / 2.0)};
        case MapKind::SDE:
            return {std::exp(pi * pi * k.L0 / (4.0 * k.L0 + 2.0)), std::exp(k.c * tau)};
    }
    return {0.0, 0.0};
}

double rate_index(MapKind kind, const RateConstants& k, double beta, double tau) {
    const RateBranches b = rate_branches(kind, k, beta, tau);
    return kind == MapKind::SDE ? b.faster() : b.slower();
}

double resolution_H(double t) {
    if (!(t >= 0.0)) {
        throw PreconditionError("resolution_H: t must be nonnegative");
    }
    if (t <= 1.0) {
        return 0.0;
    }
    return t * std::acos(1.0 / std::sqrt(t)) - std::sqrt(t - 1.0);
}

ResolutionTerms psi_e_resolution_bound(double omega, int n, double c) {
    if (!(c > 0.0)) {
        throw PreconditionError("psi_e_resolution_bound: c must be positive");
    }
    if (!(omega >= pi + std::log(2.0))) {
        throw PreconditionError("psi_e_resolution_bound: requires omega >= pi + log 2");
    }
    const double n_star = c * c * omega * omega;
    if (!(n > n_star)) {
        std::ostringstream msg;
        msg << "psi_e_resolution_bound: requires n > n* = " << n_star << " (n = " << n << ")";
        throw PreconditionError(msg.str());
    }
    const double gap = 1.0 - std::pow(n_star / n, 0.25);
    const double root_n = std::sqrt(static_cast<double>(n));
    const double interior = std::exp(-pi * omega * resolution_H(std::sqrt(n / n_star))) / gap;
    const double endpoint = 2.0 * pi * omega / (gap * gap) *
                            std::exp(4.0 * pi * omega * std::exp(pi - c * root_n) - c * root_n);
    return {interior, endpoint};
}

ResolutionTerms psi_se_resolution_terms(double omega, int n, double alpha0, double L0) {
    if (n < 1) {
        throw PreconditionError("psi_se_resolution_terms: n must be positive");
    }
    if (!(alpha0 > 0.0 && L0 > 0.0)) {
        throw PreconditionError("psi_se_resolution_terms: alpha0 and L0 must be positive");
    }
    const double root_n = std::sqrt(static_cast<double>(n));
    const double interior = std::exp(alpha0 * pi * (2.0 * omega - n / (2.0 * L0 + 1.0)) / root_n);
    const double endpoint = omega * std::exp(-pi * L0 * root_n / alpha0);
    return {interior, endpoint};
}

BudgetHit smallest_budget(const std::function<double(int)>& error, double target, int n_max,
                          int n_min) {
    if (n_min < 0 || n_max < n_min) {
        throw PreconditionError("smallest_budget: need 0 <= n_min <= n_max");
    }
    auto fail = [&]() -> BudgetHit {
        std::ostringstream msg;
        msg << "no n <= " << n_max << " reaches error " << target;
        throw BudgetExceeded(msg.str(), n_max);
    };

    // Geometric sweep to bracket the first crossing.
    int below = n_min - 1;
    int n = n_min;
    while (error(n) > target) {
        if (n == n_max) {
            return fail();
        }
        below = n;
        n = std::min(n_max, std::max(n + 1, static_cast<int>(std::ceil(n * kGrowth))));
    }

    // Linear rescan of (below, n], continuing past n if confirmation fails there.
    const int step = std::max(1, (n - below) / kRefineDivisions);
    for (int m = std::max(n_min, below + step); m <= n_max; m += step) {
        const double e = error(m);
        if (e > target) {
            continue;
        }
        if (m + step <= n_max && error(m + step) > target) {
            continue;
        }
        return {m, e};
    }
    return fail();
}

ResolutionRecord measure_resolution(const ComplexBuilder& builder, int omega, double delta,
                                    int n_max, int grid) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw PreconditionError("measure_resolution: delta must lie in (0, 1)");
    }
    if (omega < 0) {
        throw PreconditionError("measure_resolution: omega must be nonnegative");
    }
    const double w = omega;
    const Function<cplx> f = [w](double x) { return std::polar(1.0, -2.0 * pi * w * x); };
    auto error = [&](int n) {
        const auto p = builder(n);
        return measure_error<cplx>(p, f, resolving_grid(grid, n)).total;
    };
    try {
        const BudgetHit hit = smallest_budget(error, delta, n_max);
        return {omega, delta, hit.n, hit.error};
    } catch (const BudgetExceeded& e) {
        std::ostringstream msg;
        msg << "omega = " << omega << ": " << e.what();
        throw BudgetExceeded(msg.str(), n_max, omega);
    }
}

std::string_view to_string(ResolutionScaling scaling) noexcept {
    switch (scaling) {
        case ResolutionScaling::Omega:
            return "omega";
        case ResolutionScaling::OmegaSquared:
            return "omega^2";
        case ResolutionScaling::OmegaLogOmega:
            return "omega*log(c*omega)";
    }
    return "?";
}

double resolution_scale(ResolutionScaling scaling, double omega, double c) {
    switch (scaling) {
        case ResolutionScaling::Omega:
            return omega;
        case ResolutionScaling::OmegaSquared:
            return omega * omega;
        case ResolutionScaling::OmegaLogOmega:
            return omega * std::log(c * omega);
    }
    return 0.0;
}

double resolution_constant(std::span<const ResolutionRecord> records, ResolutionScaling scaling,
                           double c) {
    if (records.size() < 3) {
        throw PreconditionError("resolution_constant: need at least 3 records");
    }
    std::vector<ResolutionRecord> sorted(records.begin(), records.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.omega < b.omega; });
    const std::size_t first = sorted.size() / 2;
    double worst = 0.0;
    for (std::size_t i = first; i < sorted.size(); ++i) {
        const double scale = resolution_scale(scaling, sorted[i].omega, c);
        if (!(scale > 0.0)) {
            std::ostringstream msg;
            msg << "resolution_constant: scaling " << to_string(scaling)
                << " is not positive at omega = " << sorted[i].omega;
            throw PreconditionError(msg.str());
        }
        worst = std::max(worst, sorted[i].R / scale);
    }
    return worst;
}

}  // namespace vtm
