#include "vtm/maps.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "vtm/errors.hpp"
#include "vtm/special_functions.hpp"

namespace vtm {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

constexpr int kNewtonMaxIterations = 100;

void require_alpha(double alpha, std::string_view who) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        std::ostringstream msg;
        msg << who << ": alpha must be positive and finite (got " << alpha << ")";
        throw DomainError(msg.str());
    }
}

// sinh(u) / cosh(v) for v >= 0 without forming either factor.
double sinh_over_cosh(double u, double v) noexcept {
    const double au = std::abs(u);
    const double mag = std::exp(au - v) * (-std::expm1(-2.0 * au)) / (1.0 + std::exp(-2.0 * v));
    return std::copysign(mag, u);
}

// cosh(u) / cosh(v) for v >= 0.
double cosh_over_cosh(double u, double v) noexcept {
    const double au = std::abs(u);
    return std::exp(au - v) * (1.0 + std::exp(-2.0 * au)) / (1.0 + std::exp(-2.0 * v));
}

cplx sinh_over_cosh(cplx w, double v) {
    return (std::exp(w - v) - std::exp(-w - v)) / (1.0 + std::exp(-2.0 * v));
}

// log((1 + e^{c + d/2}) / (1 + e^{c - d/2})) for d > 0. Keeps the difference d
// exact when c is so large that c +- d/2 would round it away.
double slit_log_ratio(double c, double d) noexcept {
    if (std::isinf(c)) {
        return c > 0.0 ? d : 0.0;
    }
    const double a = c + 0.5 * d;
    const double b = c - 0.5 * d;
    if (b > 0.0) {
        return d + (std::log1p(std::exp(-a)) - std::log1p(std::exp(-b)));
    }
    return log_ratio_1p_exp(a, b);
}

double clamp_unit(double x) noexcept {
    if (std::isnan(x)) {
        return x;
    }
    return std::clamp(x, 0.0, 1.0);
}

double logistic(double s) noexcept {
    if (s < 0.0) {
        const double e = std::exp(s);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(-s));
}

cplx logistic(cplx z) {
    if (z.real() < 0.0) {
        const cplx e = std::exp(z);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(-z));
}

cplx log1p(cplx w) {
    const cplx u = 1.0 + w;
    if (u == cplx(1.0, 0.0)) {
        return w;
    }
    return std::log(u) * w / (u - 1.0);
}

// log((1 + e^{c + h}) / (1 + e^{c - h})) with 2h kept exact: c can be so large
// that c +- h rounds away part of h. Both exponentials stay below e^h.
cplx slit_log_ratio(cplx c, double h) {
    if (c.real() > 0.0) {
        return 2.0 * h + log1p(std::exp(-c - h)) - log1p(std::exp(-c + h));
    }
    return log1p(std::exp(c + h)) - log1p(std::exp(c - h));
}

double g_inverse_unchecked(double t, double alpha) noexcept {
    return t + alpha / pi * sinh_over_cosh(pi * t / alpha, pi / (2.0 * alpha));
}

double g_inverse_slope(double t, double alpha) noexcept {
    return 1.0 + cosh_over_cosh(pi * t / alpha, pi / (2.0 * alpha));
}

// (alpha/pi) asinh(pi s cosh(pi/(2 alpha)) / alpha) for s > 0, in log space.
double g_initial_guess(double s, double alpha) noexcept {
    const double v = pi / (2.0 * alpha);
    const double log_arg =
        std::log(pi * s / alpha) + v + std::log1p(std::exp(-2.0 * v)) - std::numbers::ln2;
    const double as = log_arg > 20.0 ? log_arg + std::numbers::ln2 : std::asinh(std::exp(log_arg));
    return std::min(s, alpha / pi * as);
}

double psi_se_inverse(double s, double alpha) noexcept {
    return clamp_unit(alpha / pi * slit_log_ratio(pi * s / alpha, pi / alpha));
}

// Antisymmetric about x = 1/2 by construction, so psi(1/2) = 0 exactly.
double psi_se_forward(double x, double alpha) noexcept {
    const double r = pi / alpha;
    return (log_expm1(r * x) - log_expm1(r * (1.0 - x))) / r + (0.5 - x);
}

}  // namespace

std::string_view to_string(MapKind kind) noexcept {
    switch (kind) {
        case MapKind::E:
            return "E";
        case MapKind::SE:
            return "SE";
        case MapKind::DE:
            return "DE";
        case MapKind::SDE:
            return "SDE";
    }
    return "?";
}

std::optional<MapKind> parse_map_kind(std::string_view text) noexcept {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    if (upper == "E") return MapKind::E;
    if (upper == "SE") return MapKind::SE;
    if (upper == "DE") return MapKind::DE;
    if (upper == "SDE") return MapKind::SDE;
    return std::nullopt;
}

MapSpec MapSpec::slit_exponential(double alpha) {
    require_alpha(alpha, "MapSpec::slit_exponential");
    return MapSpec(MapKind::SE, alpha);
}

MapSpec MapSpec::slit_double_exponential(double alpha) {
    require_alpha(alpha, "MapSpec::slit_double_exponential");
    return MapSpec(MapKind::SDE, alpha);
}

MapSpec MapSpec::make(MapKind kind, std::optional<double> alpha) {
    switch (kind) {
        case MapKind::E:
            return exponential();
        case MapKind::DE:
            return double_exponential();
        case MapKind::SE:
        case MapKind::SDE:
            if (!alpha) {
                throw DomainError("MapSpec::make: map " + std::string(to_string(kind)) +
                                  " requires alpha");
            }
            return kind == MapKind::SE ? slit_exponential(*alpha) : slit_double_exponential(*alpha);
    }
    throw DomainError("MapSpec::make: unknown map kind");
}

double MapSpec::strip_half_width() const noexcept {
    switch (kind_) {
        case MapKind::E:
            return pi;
        case MapKind::DE:
            return pi / 2.0;
        case MapKind::SE:
            return alpha_;
        case MapKind::SDE:
            return alpha_ / 2.0;
    }
    return 0.0;
}

std::optional<std::string> MapSpec::precision_warning() const {
    std::ostringstream msg;
    if (kind_ == MapKind::SE && alpha_ < kSePrecisionAlpha) {
        msg << "alpha=" << alpha_ << " below SE overflow guideline " << kSePrecisionAlpha;
        return msg.str();
    }
    if (kind_ == MapKind::SDE && alpha_ < kSdePrecisionAlpha) {
        msg << "alpha=" << alpha_ << " below SDE overflow guideline " << kSdePrecisionAlpha;
        return msg.str();
    }
    return std::nullopt;
}

double psi_forward(const MapSpec& map, double x) {
    if (!(x > 0.0 && x < 1.0)) {
        std::ostringstream msg;
        msg << "psi_forward: x = " << x << " outside (0,1)";
        throw DomainError(msg.str());
    }
    switch (map.kind()) {
        case MapKind::E:
            return std::log(x) - std::log1p(-x);
        case MapKind::DE:
            return std::asinh((std::log(x) - std::log1p(-x)) / pi);
        case MapKind::SE:
            return psi_se_forward(x, *map.alpha());
        case MapKind::SDE:
            return g_forward(psi_se_forward(x, *map.alpha()), *map.alpha());
    }
    throw DomainError("psi_forward: unknown map kind");
}

double psi_inverse(const MapSpec& map, double s) noexcept {
    switch (map.kind()) {
        case MapKind::E:
            return logistic(s);
        case MapKind::DE:
            return logistic(pi * std::sinh(s));
        case MapKind::SE:
            return psi_se_inverse(s, *map.alpha());
        case MapKind::SDE: {
            const double alpha = *map.alpha();
            const double h = sinh_over_cosh(pi * s / alpha, pi / (2.0 * alpha));
            return clamp_unit(alpha / pi * slit_log_ratio(pi * s / alpha + h, pi / alpha));
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double g_inverse(double t, double alpha) {
    require_alpha(alpha, "g_inverse");
    const double value = g_inverse_unchecked(t, alpha);
    if (std::isinf(value) && std::isfinite(t)) {
        std::ostringstream msg;
        msg << "g_inverse: result overflows for t = " << t << ", alpha = " << alpha;
        throw OverflowError(msg.str());
    }
    return value;
}

double g_forward(double s, double alpha, double tol) {
    require_alpha(alpha, "g_forward");
    if (!(tol > 0.0)) {
        throw PreconditionError("g_forward: tolerance must be positive");
    }
    if (s == 0.0 || std::isnan(s)) {
        return s;
    }
    if (std::isinf(s)) {
        return s;
    }
    // g^{-1} is odd, so solve for |s| and restore the sign.
    const double target = std::abs(s);
    const double scale = std::max(1.0, target);
    double lo = 0.0;
    double hi = target;
    double t = g_initial_guess(target, alpha);
    for (int it = 0; it < kNewtonMaxIterations; ++it) {
        const double residual = g_inverse_unchecked(t, alpha) - target;
        if (std::abs(residual) <= tol * scale) {
            return std::copysign(t, s);
        }
        if (residual > 0.0) {
            hi = t;
        } else {
            lo = t;
        }
        if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) {
            // Adjacent doubles bracket the root; t is as good as it gets.
            return std::copysign(t, s);
        }
        double next = t - residual / g_inverse_slope(t, alpha);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        t = next;
    }
    std::ostringstream msg;
    msg << "g_forward: no convergence for s = " << s << ", alpha = " << alpha
        << " (tolerance too tight?)";
    throw ConvergenceError(msg.str());
}

ComplexPoint psi_inverse_complex(const MapSpec& map, ComplexPoint z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("psi_inverse_complex: non-finite argument");
    }
    const double width = map.strip_half_width();
    if (!(std::abs(z.imag()) < width)) {
        std::ostringstream msg;
        msg << "psi_inverse_complex: |Im z| = " << std::abs(z.imag())
            << " outside the analyticity strip of half-width " << width;
        throw DomainError(msg.str());
    }
    switch (map.kind()) {
        case MapKind::E:
            return logistic(z);
        case MapKind::DE:
            return logistic(pi * std::sinh(z));
        case MapKind::SE: {
            const double alpha = *map.alpha();
            return alpha / pi * slit_log_ratio(pi * z / alpha, pi / (2.0 * alpha));
        }
        case MapKind::SDE: {
            const double alpha = *map.alpha();
            const cplx w = pi * z / alpha;
            const double half = pi / (2.0 * alpha);
            return alpha / pi * slit_log_ratio(w + sinh_over_cosh(w, half), half);
        }
    }
    throw DomainError("psi_inverse_complex: unknown map kind");
}

}  // namespace vtm
