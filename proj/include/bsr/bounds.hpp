#pragma once

#include "bsr/ratio.hpp"

#include <cstdint>
#include <optional>

namespace bsr {

/// Bound evaluations for one modulus.
struct BoundReport {
    std::uint64_t q = 0;
    double lemma1_bound = 0.0;
    double refined_bound = 0.0;
    std::optional<bool> sigma2_ok;  ///< only when Sigma_2 was computed
    bool envelope_ok = false;
    std::optional<bool> dusart_ok;  ///< only at designated x values
};

/// Lower end of the range Dusart's inequality covers.
inline constexpr double kDusartThreshold = 2278383.0;

/// q below which the Theorem-1 envelope is reported but never asserted.
inline constexpr std::uint64_t kEnvelopeReportFrom = 1000;

/// Empirical band of R(q) (log q)^{3/4}.
inline constexpr double kNormalizedLow = 0.19;
inline constexpr double kNormalizedHigh = 0.68;

/// A + (pi^2/6 - A) / q.
[[nodiscard]] double lemma1_bound(std::uint64_t q);

/// ((q-1)/q)(A + psi(2/q) - psi(1/q)) - (q-1)/2, evaluated as
/// ((q-1)/q)(A + psi(1 + 2/q) - psi(1 + 1/q)) which is the same number
/// without the O(q) cancellation.
[[nodiscard]] double refined_bound(std::uint64_t q);

/// e^-1.87 / log q < R(q) < e^0.51 log q (the xi = 0 envelope).
[[nodiscard]] bool check_envelope(const RatioRecord& record);

/// R(q) (log q)^{3/4} inside (0.19, 0.68).
[[nodiscard]] bool normalized_in_band(const RatioRecord& record);

/// |sum_{p<=x} 1/p - log log x - M| <= 0.2 / (log x)^3 for x >= 2278383.
/// Throws std::domain_error below the threshold.
[[nodiscard]] bool check_dusart(double x);

/// Left-hand side of the same inequality, for reporting.
[[nodiscard]] double dusart_deviation(double x);

/// Envelope under a hypothetical exceptional zero beta0:
/// (lower, upper) = e^{-E1(1-beta0)} (e^-1.87 / ((log q)^2 ell), e^0.51 (log q)^2 ell).
struct Envelope {
    double lower = 0.0;
    double upper = 0.0;
};

[[nodiscard]] Envelope siegel_envelope(std::uint64_t q, double beta0, double ell);

/// Bound checks for a computed record; sigma2 is optional.
[[nodiscard]] BoundReport bound_report(const RatioRecord& record, std::optional<double> sigma2 = std::nullopt);

} // namespace bsr
