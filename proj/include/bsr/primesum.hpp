#pragma once

#include "bsr/fft.hpp"
#include "bsr/ntheory.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace bsr {

/// Truncation parameters of the Euler-product verifier, with the certified
/// bounds on the two discarded tails.
///
///   |E1| <= P (q-1) / (M (M-1) (P-1) P^M)         terms m > M
///   |E2| <= 2 P (q-1) / (K^2 (P-1) (P^K - 1))     terms k > K
struct TruncationPlan {
    std::uint64_t q = 0;
    std::uint64_t A = 0;
    std::uint64_t P = 0; ///< A q; all primes up to P enter the head sum
    int M = 2;           ///< prime-power depth
    int K = 1;           ///< Moebius depth
    int delta = 0;       ///< target number of decimals
    double e1_bound = 0.0;
    double e2_bound = 0.0;
};

/// Prime (m = 1) and prime-power (m >= 2) parts of log R(q).
struct SigmaSplit {
    std::uint64_t q = 0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double log_R_check = 0.0; ///< sigma1 + sigma2, as stored
    TruncationPlan plan;
};

inline constexpr std::uint64_t kDefaultA = 20;
inline constexpr std::uint64_t kVerifierCostGuard = 5000;

/// log E1 bound and log E2 bound, evaluated in log space.
[[nodiscard]] double log_e1_bound(std::uint64_t q, std::uint64_t P, int M);
[[nodiscard]] double log_e2_bound(std::uint64_t q, std::uint64_t P, int K);

/// Smallest M >= 2, then smallest K >= 1, with each bound < 10^-delta / 2.
[[nodiscard]] TruncationPlan choose_plan(std::uint64_t q, std::uint64_t A, int delta);

/// Primes p <= P with p != q, and their discrete logs, shared by the sums below.
struct PrimeTable {
    std::vector<std::uint64_t> primes;
    std::vector<std::uint32_t> dlogs;
};

[[nodiscard]] PrimeTable prime_table(const PrimeField& field, std::uint64_t P);

/// L(n, chi_j) for every j (index 0 is L(n, chi0) = zeta(n)(1 - q^-n)),
/// from one transform of a -> q^-n zeta(n, a/q).
[[nodiscard]] std::vector<cplx> L_values(const PrimeField& field, int n);

/// log L_P(n, chi_j), L_P(s, chi) = L(s, chi) prod_{p<=P} (1 - chi(p) p^-s),
/// on the principal branch. Requires n >= 2 and j != 0. The magnitude obeys
/// |log L_P(n, chi)| <= P^{1-n} / (n-1), which is asserted.
[[nodiscard]] cplx truncated_log_L(int n, std::uint64_t j, const PrimeField& field, std::uint64_t P);

/// r(q, P) = -sum_{chi != chi0} sum_{p <= P} log(1 - chi(p)/p), real parts only.
[[nodiscard]] double head_sum(const PrimeField& field, std::uint64_t P);

/// S(q, P, M, K) = sum_{chi != chi0} sum_{m<=M} (1/m) sum_{k<=K} (mu(k)/k) Re log L_P(km, chi^km).
/// The single km = 1 term uses log|L(1, chi)| + sum_{p<=P} Re log(1 - chi(p)/p),
/// with |L(1, chi_j)| taken from `L1_moduli` (indexed by j, size q - 1).
[[nodiscard]] double moebius_tail(const PrimeField& field, const TruncationPlan& plan,
                                  std::span<const double> L1_moduli);

/// Euler-product value of log R(q), certified to 10^-delta up to rounding.
/// Throws CostGuardExceeded above `cost_guard`.
[[nodiscard]] SigmaSplit verify_ratio(std::uint64_t q, std::uint64_t A = kDefaultA, int delta = 8,
                                      std::uint64_t cost_guard = kVerifierCostGuard);

/// Sigma_2 alone (m >= 2); needs no L(1, chi) values.
[[nodiscard]] double sigma2(std::uint64_t q, std::uint64_t A = kDefaultA, int delta = 8,
                            std::uint64_t cost_guard = kVerifierCostGuard);

/// Sigma_1 computed directly (m = 1 only) and as log_R - Sigma_2; both must
/// agree within 2 10^-delta + err_est or VerificationFailure is thrown.
[[nodiscard]] SigmaSplit sigma1(std::uint64_t q, double log_R, std::uint64_t A = kDefaultA, int delta = 8,
                                double err_est = 0.0, std::uint64_t cost_guard = kVerifierCostGuard);

/// M(q, 1) = (Sigma_1 + M - 1/q) / (q - 1).
[[nodiscard]] double mertens_M_q1(const SigmaSplit& split);

/// B(q) = -sum_{m>=2} (1/m) sum_{p != q} p^-m, both as a series and in closed form.
struct MertensB {
    double series = 0.0;
    double closed_form = 0.0; ///< M - gamma - (log(1 - 1/q) + 1/q)
};

[[nodiscard]] MertensB mertens_B_q(std::uint64_t q);

} // namespace bsr
