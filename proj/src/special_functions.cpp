#include "vtm/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vtm/errors.hpp"

namespace vtm {

namespace {

constexpr int kLambertMaxIterations = 100;
constexpr int kLandenMaxLevels = 10;
constexpr double kLandenTerminate = 1e-15;

double lambert_seed(double x) {
    if (x >= 0.0) {
        return std::log1p(x);
    }
    if (x > -0.25) {
        return x;
    }
    // Expansion about the branch point x = -1/e, w = -1.
    const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
}

}  // namespace

double lambert_w0(double x, double tol) {
    const double branch = -1.0 / std::numbers::e;
    if (std::isnan(x) || x < branch) {
        throw DomainError("lambert_w0: argument " + std::to_string(x) + " is below -1/e");
    }
    if (!(tol > 0.0)) {
        throw PreconditionError("lambert_w0: tolerance must be positive");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (x == branch) {
        return -1.0;
    }
    if (std::isinf(x)) {
        return x;
    }

    const double scale = std::abs(x);
    double w = lambert_seed(x);
    for (int it = 0; it < kLambertMaxIterations; ++it) {
        const double ew = std::exp(w);
        const double residual = w * ew - x;
        if (std::abs(residual) <= tol * scale) {
            return std::max(w, -1.0);
        }
        const double wp1 = w + 1.0;
        const double denom = ew * wp1 - (w + 2.0) * residual / (2.0 * wp1);
        double next = w - residual / denom;
        if (!std::isfinite(next) || next <= -1.0) {
            next = -1.0 + std::sqrt(2.0 * (std::numbers::e * x + 1.0));
        }
        w = next;
    }
    throw ConvergenceError("lambert_w0: no convergence for x = " + std::to_string(x) +
                           " (tolerance too tight?)");
}

JacobiElliptic jacobi_elliptic(double u, double k) {
    if (!(k >= 0.0 && k < 1.0)) {
        throw DomainError("jacobi_elliptic: modulus must lie in [0, 1)");
    }
    std::array<double, kLandenMaxLevels + 1> a{};
    std::array<double, kLandenMaxLevels + 1> c{};
    a[0] = 1.0;
    c[0] = k;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    int levels = 0;
    while (levels < kLandenMaxLevels && std::abs(c[levels]) >= kLandenTerminate) {
        const double an = a[levels];
        a[levels + 1] = 0.5 * (an + b);
        c[levels + 1] = 0.5 * (an - b);
        b = std::sqrt(an * b);
        ++levels;
    }

    double phi = std::ldexp(a[levels] * u, levels);
    double phi_prev = phi;
    for (int i = levels; i > 0; --i) {
        phi_prev = phi;
        phi = 0.5 * (phi + std::asin(c[i] * std::sin(phi) / a[i]));
    }
    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    const double dn = levels == 0 ? 1.0 : cn / std::cos(phi_prev - phi);
    return {sn, cn, dn};
}

double jacobi_sn(double u, double k) { return jacobi_elliptic(u, k).sn; }

double log1p_exp(double a) noexcept {
    if (a > 0.0) {
        return a + std::log1p(std::exp(-a));
    }
    return std::log1p(std::exp(a));
}

double log_ratio_1p_exp(double a, double b) noexcept {
    if (a == b) {
        return 0.0;
    }
    if (a == std::numeric_limits<double>::infinity()) {
        return a;
    }
    if (b == std::numeric_limits<double>::infinity()) {
        return -b;
    }
    if (a > 0.0 && b > 0.0) {
        return (a - b) + (std::log1p(std::exp(-a)) - std::log1p(std::exp(-b)));
    }
    return log1p_exp(a) - log1p_exp(b);
}

double log_expm1(double u) noexcept {
    if (u > 1.0) {
        return u + std::log1p(-std::exp(-u));
    }
    return std::log(std::expm1(u));
}

double log1m_exp_neg(double v) noexcept {
    if (v < std::numbers::ln2) {
        return std::log(-std::expm1(-v));
    }
    return std::log1p(-std::exp(-v));
}

}  // namespace vtm
