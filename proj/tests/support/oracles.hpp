#pragma once

// Reference values and slow independent routes used to check the library.
// Decimal constants were computed at 50 significant digits with mpmath and
// rounded to 20.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double kW1 = 0.567143290409783873;
inline constexpr double kW10 = 1.7455280027406993831;
inline constexpr double kW1e6 = 11.383358086140052622;
inline constexpr double kWm03 = -0.48940222718021496904;
inline constexpr double kWm036 = -0.80608431597081777829;

/// Complete elliptic integral K at modulus 1/sqrt 2.
inline constexpr double kKInvSqrt2 = 1.8540746773013719184;

struct SnCnDn {
    double u, sn, cn, dn;
};
/// Jacobi functions at modulus 1/sqrt 2.
inline const SnCnDn kJacobiInvSqrt2[] = {
    {0.3, 0.29341273316845538786, 0.95598586182778707425, 0.97824050417436120377},
    {1.7, 0.99404770074086053233, 0.10894571424250053114, 0.71129078746030746798},
    {-2.5, -0.89061518822609435595, -0.45475772286020445471, 0.7767897355465629868},
    {10.0, 0.8588125059527787316, -0.51229003466699251782, 0.79449388909516113273},
};
inline constexpr double kSn07k03 = 0.64064853972026227919;   // sn(0.7, 0.3)
inline constexpr double kSn31k095 = 0.98633382439322150749;  // sn(3.1, 0.95)

struct LogRatio {
    double a, b, value;
};
inline const LogRatio kLogRatio[] = {
    {800.0, -800.0, 800.0},
    {1.0, -1.0, 1.0},
    {35.0, 34.9, 0.099999999999999933689},
    {-40.0, -41.0, 2.6854720659566002194e-18},
    {0.5, 700.0, -699.02592301581989332},
};

inline constexpr double kF3Half = -0.39683992534708617979;
inline constexpr double kF3Tenth = 0.021126471780804264385;
inline constexpr double kF3At093 = 0.025813500697300276287;

inline constexpr double kGInverse17a08 = 29.499072847780535398;
inline constexpr double kSeInverse04a05 = 0.83251024904461097869;
inline constexpr double kSeForward03a05 = -0.22424020165332333765;
inline constexpr double kSdeForward03a1 = -0.22328129218983131615;
inline constexpr double kSdeInverse07a1 = 0.97368092269733054671;
inline constexpr double kSdeInverseM035a06 = 0.1665569111692037084;
inline constexpr double kDeForward03 = -0.26653619941424457892;
inline constexpr double kDeInverse15 = 0.99875742822861219342;

/// Root of w e^w = x on [lo, hi] by bisection.
inline double lambert_bisect(double x, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid * std::exp(mid) < x) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// K(k) = pi / (2 AGM(1, sqrt(1 - k^2))).
inline double complete_elliptic_k(double k) {
    double a = 1.0;
    double b = std::sqrt(1.0 - k * k);
    for (int i = 0; i < 40; ++i) {
        const double next = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = next;
    }
    return std::numbers::pi / (2.0 * a);
}

/// Discrete cosine coefficients by the defining double sum.
template <typename T>
std::vector<T> direct_coefficients(const std::vector<T>& samples) {
    const int n = static_cast<int>(samples.size()) - 1;
    std::vector<T> c(n + 1);
    for (int k = 0; k <= n; ++k) {
        T sum{};
        for (int j = 0; j <= n; ++j) {
            const double gj = (j == 0 || j == n) ? 0.5 : 1.0;
            sum += gj * samples[j] * std::cos(std::numbers::pi * j * k / n);
        }
        const double gk = (k == 0 || k == n) ? 0.5 : 1.0;
        c[k] = 2.0 * gk / n * sum;
    }
    return c;
}

/// Folded index of cos(k pi (y+1)/2) sampled at n+1 equispaced nodes.
inline int alias_index(int k, int n) {
    const int m = (k + n - 1) % (2 * n);
    return std::abs(m - (n - 1));
}

}  // namespace oracle
