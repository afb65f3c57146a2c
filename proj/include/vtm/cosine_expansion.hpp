#pragma once

#include <complex>
#include <concepts>
#include <functional>
#include <span>
#include <vector>

namespace vtm {

template <typename T>
concept ExpansionScalar = std::same_as<T, double> || std::same_as<T, std::complex<double>>;

/// Truncated cosine series sum_{k=0}^{n} c_k cos(k pi (y+1)/2) on [-1,1].
template <ExpansionScalar T>
class CosineExpansion {
public:
    /// Throws PreconditionError when coeffs is empty or holds a non-finite entry.
    explicit CosineExpansion(std::vector<T> coeffs);

    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] std::span<const T> coefficients() const noexcept { return coeffs_; }

    [[nodiscard]] T operator()(double y) const noexcept;

private:
    std::vector<T> coeffs_;
};

/// Equispaced nodes y_j = -1 + 2j/n, j = 0..n.
[[nodiscard]] std::vector<double> cosine_nodes(int n);

/// Discrete coefficients from n+1 samples at cosine_nodes(n):
///   c_k = (2 g_k / n) sum_j g_j F(y_j) cos(j k pi / n),  g_0 = g_n = 1/2, else 1.
/// O(n log n) through a DCT-I built from a length-2n real FFT.
template <ExpansionScalar T>
[[nodiscard]] CosineExpansion<T> discrete_coefficients(std::span<const T> samples);

/// Backward (Clenshaw) summation with Reinsch's modification near y = +-1.
template <ExpansionScalar T>
[[nodiscard]] T evaluate_expansion(const CosineExpansion<T>& e, double y) noexcept;

/// Values at the `points` equispaced abscissae y_i = -1 + 2i/(points-1).
/// Coefficients above points-1 are folded onto their aliases, so the cost is
/// O(n + points log points) for any degree.
template <ExpansionScalar T>
[[nodiscard]] std::vector<T> evaluate_on_uniform_grid(const CosineExpansion<T>& e, int points);

/// Continuous coefficient c_k of f (with the 1/2 factor for k = 0), by adaptive
/// Gauss-Kronrod (7/15) quadrature to absolute tolerance tol. Throws
/// ConvergenceError when 10^4 panels do not suffice.
template <ExpansionScalar T>
[[nodiscard]] T exact_coefficient(const std::function<T(double)>& f, int k, double tol = 1e-12);

}  // namespace vtm
