#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace vtm {

/// The four variable-transform families mapping (0,1) onto the real line.
enum class MapKind { E, SE, DE, SDE };

[[nodiscard]] std::string_view to_string(MapKind kind) noexcept;

/// Parses "E", "SE", "DE" or "SDE" (case-insensitive).
[[nodiscard]] std::optional<MapKind> parse_map_kind(std::string_view text) noexcept;

[[nodiscard]] constexpr bool is_parametrized(MapKind kind) noexcept {
    return kind == MapKind::SE || kind == MapKind::SDE;
}

/// Below these strip widths exp(pi/alpha) (SE) or exp(exp(pi/(2 alpha))) (SDE)
/// leaves the double range; the maps remain usable through log-space evaluation
/// but results should be treated with care.
inline constexpr double kSePrecisionAlpha = 0.0044;
inline constexpr double kSdePrecisionAlpha = 0.24;

/// A transform family together with its strip parameter alpha (SE and SDE only).
class MapSpec {
public:
    [[nodiscard]] static MapSpec exponential() { return MapSpec(MapKind::E, 0.0); }
    [[nodiscard]] static MapSpec double_exponential() { return MapSpec(MapKind::DE, 0.0); }
    [[nodiscard]] static MapSpec slit_exponential(double alpha);
    [[nodiscard]] static MapSpec slit_double_exponential(double alpha);

    /// Generic factory; alpha is required for SE/SDE and ignored otherwise.
    [[nodiscard]] static MapSpec make(MapKind kind, std::optional<double> alpha);

    [[nodiscard]] MapKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::optional<double> alpha() const noexcept {
        if (is_parametrized(kind_)) {
            return alpha_;
        }
        return std::nullopt;
    }

    /// Half-width of the horizontal strip on which the inverse map is analytic.
    [[nodiscard]] double strip_half_width() const noexcept;

    /// Finite-precision guidance; empty when alpha is comfortably large.
    [[nodiscard]] std::optional<std::string> precision_warning() const;

    friend bool operator==(const MapSpec&, const MapSpec&) = default;

private:
    MapSpec(MapKind kind, double alpha) : kind_(kind), alpha_(alpha) {}

    MapKind kind_;
    double alpha_;
};

using ComplexPoint = std::complex<double>;

/// s = psi(x) for x in (0,1). The SDE branch solves g by safeguarded Newton.
[[nodiscard]] double psi_forward(const MapSpec& map, double x);

/// x = psi^{-1}(s) in [0,1]; +-infinity map to 1 and 0. Saturates to the
/// exact limit where the stable formula underflows.
[[nodiscard]] double psi_inverse(const MapSpec& map, double s) noexcept;

/// g^{-1}(t; alpha) = t + (alpha/pi) sinh(pi t/alpha) / cosh(pi/(2 alpha)).
/// Throws OverflowError when the result exceeds the double range.
[[nodiscard]] double g_inverse(double t, double alpha);

/// Solves g^{-1}(t; alpha) = s for t.
[[nodiscard]] double g_forward(double s, double alpha, double tol = 1e-14);

/// Analytic continuation of psi^{-1} into the map's strip of analyticity
/// (|Im z| < pi, pi/2, alpha, alpha/2 for E, DE, SE, SDE).
[[nodiscard]] ComplexPoint psi_inverse_complex(const MapSpec& map, ComplexPoint z);

}  // namespace vtm
