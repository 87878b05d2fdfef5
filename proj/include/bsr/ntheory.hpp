#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace bsr {

/// An odd prime modulus q together with its least primitive root and the
/// discrete-logarithm table of the multiplicative group (Z/qZ)^*.
///
/// dlog[a] is the exponent k in [0, q-2] with g^k = a (mod q), for
/// 1 <= a <= q-1. Index 0 is unused and holds 0. The inverse table
/// power[k] = g^k mod q is kept as well since character sums are
/// assembled by walking the powers of g.
struct PrimeField {
    std::uint64_t q = 0;
    std::uint64_t g = 0;
    std::vector<std::uint32_t> dlog;
    std::vector<std::uint32_t> power;

    /// Order of the character group, q - 1.
    [[nodiscard]] std::uint64_t order() const noexcept { return q - 1; }
};

/// Primes <= limit in ascending order. Empty for limit < 2.
[[nodiscard]] std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

/// Streams the primes <= limit, ascending, without materializing them.
/// Memory is O(sqrt(limit) + segment).
void for_each_prime(std::uint64_t limit, const std::function<void(std::uint64_t)>& visit);

/// Deterministic primality test for every 64-bit input.
[[nodiscard]] bool is_prime(std::uint64_t n) noexcept;

/// Moebius function mu(k), k >= 1. Throws std::domain_error for k = 0.
[[nodiscard]] int moebius(std::uint64_t k);

/// Distinct prime factors of n >= 1, ascending (trial division).
[[nodiscard]] std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

/// (base^exp) mod m without overflow for any 64-bit m.
[[nodiscard]] std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

/// Least primitive root of the odd prime q.
/// Throws std::invalid_argument when q is not an odd prime.
[[nodiscard]] std::uint64_t find_primitive_root(std::uint64_t q);

/// Builds the discrete-log tables for q. q must fit in 32 bits.
[[nodiscard]] PrimeField build_field(std::uint64_t q);

/// Sum of 1/p over the primes p <= x (compensated summation).
[[nodiscard]] double prime_reciprocal_sum(double x);

} // namespace bsr
