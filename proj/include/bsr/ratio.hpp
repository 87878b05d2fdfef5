#pragma once

#include "bsr/ntheory.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace bsr {

enum class RatioMethod { FFT, DIGAMMA, NAIVE };

[[nodiscard]] std::string_view to_string(RatioMethod method) noexcept;

/// log of the Brauer-Siegel ratio R(q) = prod_{chi != chi0} L(1, chi),
/// split by character parity.
struct RatioRecord {
    std::uint64_t q = 0;
    double log_R = 0.0;
    double R = 0.0;
    double odd_part = 0.0;  ///< sum over odd chi of log|L(1, chi)|
    double even_part = 0.0; ///< sum over even chi != chi0 of log|L(1, chi)|
    RatioMethod method = RatioMethod::FFT;
    double err_est = 0.0;   ///< heuristic forward rounding budget, not a certified bound
};

struct RatioOptions {
    /// Use the half-length decimation-in-frequency transforms instead of one
    /// full-length transform filtered by parity.
    bool decimation = false;
};

/// Default q limit of the quadratic-time per-character evaluation.
inline constexpr std::uint64_t kNaiveCostGuard = 100'000;

/// ((q-1)/2)(log pi - log q / 2) + sum_{chi odd} log |sum_a (a/q) chi(a)|.
[[nodiscard]] double odd_log_sum(const PrimeField& field, const RatioOptions& options = {});

/// ((q-3)/2)(log 2 - log q / 2) + sum_{chi even, != chi0} log |sum_a conj(chi)(a) log Gamma(a/q)|.
[[nodiscard]] double even_log_sum(const PrimeField& field, const RatioOptions& options = {});

/// Production path: both parity sums from O(q log q) character transforms.
[[nodiscard]] RatioRecord log_ratio_fft(const PrimeField& field, const RatioOptions& options = {});

/// Cross-check: -(q-2) log q + sum_{chi != chi0} log |sum_a chi(a) psi(a/q)|.
[[nodiscard]] RatioRecord log_ratio_digamma(const PrimeField& field);

/// O(q^2) evaluation, one explicit character at a time, sharing no code
/// with the transforms. Throws CostGuardExceeded for q > cost_guard.
[[nodiscard]] RatioRecord log_ratio_naive(const PrimeField& field, std::uint64_t cost_guard = kNaiveCostGuard);

/// |L(1, chi_j)| for j = 0..q-2 from the quadratic-time closed forms
/// (entry 0, the principal character, is left at 0).
[[nodiscard]] std::vector<double> naive_L1_moduli(const PrimeField& field,
                                                  std::uint64_t cost_guard = kNaiveCostGuard);

/// log H(q) = log 2 + (1/2) log q + ((q-1)/2)(log q - log 2 pi).
[[nodiscard]] double log_H(std::uint64_t q);

/// log(h(q) Reg(q)) = log R(q) + log H(q).
[[nodiscard]] double log_hreg(const RatioRecord& record);

} // namespace bsr
