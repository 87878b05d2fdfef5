#pragma once

#include <cstdint>

namespace bsr {

/// Numerical constants that the bounds and the verifier rely on.
struct ConstantsTable {
    double gamma_euler = 0.0;     ///< Euler's constant
    double meissel_mertens = 0.0; ///< Meissel-Mertens constant M
    double A_const = 0.0;         ///< extremal constant A of the prime-power bound
    double C1_const = 0.0;        ///< c1(k_opt)
    int k_opt = 0;                ///< odd k minimizing c1(k)
};

/// Lazily computed, process-wide, read-only table. Thread-safe.
[[nodiscard]] const ConstantsTable& constants();

/// A = gamma/2 + (1/2) sum_{j>=3} psi(alpha(j)) / alpha(j), alpha(j) = (j^2 - j)/2.
/// Sums j <= 10^6 directly and closes the tail with an asymptotic integral.
[[nodiscard]] double constant_A();

/// Partial sum gamma/2 + (1/2) sum_{j=3}^{last} psi(alpha(j)) / alpha(j), no tail.
[[nodiscard]] double constant_A_partial(std::uint64_t last);

/// c1(k) = H_{(k-1)/2} / 4 - log log k, for odd k >= 3.
[[nodiscard]] double c1(int k);

struct C1Minimum {
    int k_opt = 0;
    double value = 0.0;
};

/// Minimizes c1 over odd k in [3, 10^4].
[[nodiscard]] C1Minimum minimize_c1();

/// Meissel-Mertens constant from gamma - sum_p sum_{m>=2} 1/(m p^m).
[[nodiscard]] double meissel_mertens();

/// sum_{p > cutoff} p^-s for integer s >= 2, by Moebius inversion of
/// log zeta truncated to primes above the cutoff.
[[nodiscard]] double prime_zeta_tail(int s, std::uint64_t cutoff);

/// sum_p sum_{m>=2} 1/(m p^m) over all primes except `excluded`
/// (pass 0 to keep every prime).
[[nodiscard]] double prime_power_sum(std::uint64_t excluded = 0);

} // namespace bsr
