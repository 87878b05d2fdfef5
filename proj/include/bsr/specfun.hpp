#pragma once

namespace bsr {

/// Euler's constant gamma.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// log Gamma(x) for x > 0. Evaluated in extended precision by shifting
/// the argument past 15 and applying the Stirling series, so the result
/// is accurate to a few ulp on (0, 1].
/// Throws std::domain_error for x <= 0 or NaN.
[[nodiscard]] double log_gamma(double x);

/// Digamma psi(x) = Gamma'(x)/Gamma(x) for x > 0.
/// Throws std::domain_error for x <= 0 or NaN.
[[nodiscard]] double digamma(double x);

/// Exponential integral E1(x) = int_x^inf e^-t / t dt for x > 0.
/// Power series below x = 1, modified Lentz continued fraction above.
[[nodiscard]] double exp_integral_E1(double x);

/// Hurwitz zeta(n, x) = sum_{k>=0} (k + x)^-n for integer n >= 2 and
/// 0 < x <= 1. Throws std::domain_error outside that range.
[[nodiscard]] double hurwitz_zeta(int n, double x);

namespace detail {

/// Euler-Maclaurin Hurwitz zeta without the x <= 1 restriction (x > 0).
[[nodiscard]] double hurwitz_zeta_any(int n, double x);

} // namespace detail

} // namespace bsr
