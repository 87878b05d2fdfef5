#include "bsr/ntheory.hpp"

#include "bsr/summation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bsr {

namespace {

constexpr std::uint64_t kSegmentOdds = 1u << 18; // odd numbers per segment

std::uint64_t isqrt(std::uint64_t n) noexcept
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

__extension__ using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

// Plain sieve of Eratosthenes for the base primes up to sqrt(limit).
std::vector<std::uint32_t> small_primes(std::uint64_t limit)
{
    std::vector<std::uint32_t> out;
    if (limit < 2)
        return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return out;
}

} // namespace

void for_each_prime(std::uint64_t limit, const std::function<void(std::uint64_t)>& visit)
{
    if (limit < 2)
        return;
    visit(2);
    if (limit < 3)
        return;

    const auto base = small_primes(isqrt(limit));
    // Odd-only representation: index i stands for 2i + 1.
    const std::uint64_t last_index = (limit - 1) / 2;
    std::vector<std::uint8_t> segment(kSegmentOdds);
    // next_index[b] = first odd multiple index of base[b] not yet crossed out.
    std::vector<std::uint64_t> next_index(base.size(), 0);
    for (std::size_t b = 1; b < base.size(); ++b) {
        const std::uint64_t p = base[b];
        next_index[b] = (p * p - 1) / 2;
    }

    for (std::uint64_t lo = 1; lo <= last_index; lo += kSegmentOdds) {
        const std::uint64_t hi = std::min(lo + kSegmentOdds - 1, last_index);
        const std::uint64_t len = hi - lo + 1;
        std::fill(segment.begin(), segment.begin() + static_cast<std::ptrdiff_t>(len), 1);
        for (std::size_t b = 1; b < base.size(); ++b) {
            const std::uint64_t p = base[b];
            std::uint64_t idx = next_index[b];
            if (idx > hi)
                continue;
            for (; idx <= hi; idx += p)
                segment[idx - lo] = 0;
            next_index[b] = idx;
        }
        for (std::uint64_t i = 0; i < len; ++i)
            if (segment[i])
                visit(2 * (lo + i) + 1);
    }
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit)
{
    std::vector<std::uint64_t> out;
    if (limit >= 2) {
        const double x = static_cast<double>(limit);
        out.reserve(static_cast<std::size_t>(1.26 * x / std::max(1.0, std::log(x))) + 8);
    }
    for_each_prime(limit, [&](std::uint64_t p) { out.push_back(p); });
    return out;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept
{
    if (m == 1)
        return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1u)
            result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2)
        return false;
    // This witness set is deterministic for n < 3.3e24, hence for all 64-bit n.
    constexpr std::array<std::uint64_t, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (const auto p : witnesses) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1u) == 0) {
        d >>= 1;
        ++s;
    }
    for (const auto a : witnesses) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0)
            continue;
        out.push_back(p);
        while (n % p == 0)
            n /= p;
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

int moebius(std::uint64_t k)
{
    if (k == 0)
        throw std::domain_error("moebius: argument must be >= 1");
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= k; p += (p == 2 ? 1 : 2)) {
        if (k % p != 0)
            continue;
        k /= p;
        if (k % p == 0)
            return 0;
        sign = -sign;
    }
    if (k > 1)
        sign = -sign;
    return sign;
}

std::uint64_t find_primitive_root(std::uint64_t q)
{
    if (q < 3 || !is_prime(q))
        throw std::invalid_argument("find_primitive_root: " + std::to_string(q) + " is not an odd prime");
    const auto factors = distinct_prime_factors(q - 1);
    for (std::uint64_t g = 2; g < q; ++g) {
        const bool generator = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t r) {
            return pow_mod(g, (q - 1) / r, q) != 1;
        });
        if (generator)
            return g;
    }
    // Unreachable for prime q: a primitive root always exists.
    throw std::logic_error("find_primitive_root: no generator found");
}

PrimeField build_field(std::uint64_t q)
{
    if (q > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("build_field: modulus exceeds 32 bits");
    PrimeField field;
    field.q = q;
    field.g = find_primitive_root(q);
    field.dlog.assign(q, 0);
    field.power.assign(q - 1, 0);
    std::uint64_t x = 1;
    for (std::uint64_t k = 0; k < q - 1; ++k) {
        field.power[k] = static_cast<std::uint32_t>(x);
        field.dlog[x] = static_cast<std::uint32_t>(k);
        x = x * field.g % q;
    }
    return field;
}

double prime_reciprocal_sum(double x)
{
    if (!(x >= 2.0))
        return 0.0;
    CompensatedSum sum;
    for_each_prime(static_cast<std::uint64_t>(std::floor(x)),
                   [&](std::uint64_t p) { sum += 1.0 / static_cast<double>(p); });
    return sum.value();
}

} // namespace bsr
