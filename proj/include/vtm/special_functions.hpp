#pragma once

namespace vtm {

/// Principal branch of the Lambert-W function: the w >= -1 solving w e^w = x.
///
/// Halley iteration, converged when |w e^w - x| <= tol * |x|.
/// Throws DomainError for x < -1/e and ConvergenceError after 100 iterations.
[[nodiscard]] double lambert_w0(double x, double tol = 1e-14);

/// Jacobi elliptic functions sharing one descending-Landen pass.
struct JacobiElliptic {
    double sn;
    double cn;
    double dn;
};

/// sn, cn and dn of argument u for modulus k in [0, 1), via the
/// arithmetic-geometric mean with descending Landen transformations.
[[nodiscard]] JacobiElliptic jacobi_elliptic(double u, double k);

[[nodiscard]] double jacobi_sn(double u, double k);

/// log(1 + e^a) without overflow; exact limits at +-infinity.
[[nodiscard]] double log1p_exp(double a) noexcept;

/// log((1 + e^a) / (1 + e^b)) without overflow or catastrophic cancellation.
/// Accepts +-infinity; equal arguments give exactly 0.
[[nodiscard]] double log_ratio_1p_exp(double a, double b) noexcept;

/// log(e^u - 1) for u > 0.
[[nodiscard]] double log_expm1(double u) noexcept;

/// log(1 - e^-v) for v > 0.
[[nodiscard]] double log1m_exp_neg(double v) noexcept;

}  // namespace vtm
