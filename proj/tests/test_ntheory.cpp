#include "bsr/ntheory.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

using namespace bsr;

TEST_CASE("sieve_primes small cases")
{
    CHECK(sieve_primes(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(sieve_primes(2) == std::vector<std::uint64_t>{2});
    CHECK(sieve_primes(1).empty());
    CHECK(sieve_primes(0).empty());
}

TEST_CASE("sieve_primes matches Eratosthenes up to 10^6")
{
    const auto ref = oracle::eratosthenes(1'000'000);
    const auto primes = sieve_primes(1'000'000);
    CHECK(primes.size() == 78498);
    std::vector<std::uint64_t> expected;
    for (std::uint64_t i = 0; i < ref.size(); ++i)
        if (ref[i])
            expected.push_back(i);
    CHECK(primes == expected);
    CHECK(std::is_sorted(primes.begin(), primes.end()));
    CHECK(std::adjacent_find(primes.begin(), primes.end()) == primes.end());
}

TEST_CASE("sieve segment boundaries")
{
    // Limits around the 2^18-odd segment edges and just past a square.
    for (std::uint64_t limit : {524'287ull, 524'288ull, 524'289ull, 1'048'575ull, 1'048'577ull, 121ull, 169ull}) {
        const auto ref = oracle::eratosthenes(limit);
        const auto primes = sieve_primes(limit);
        CHECK(primes.size() == static_cast<std::size_t>(std::count(ref.begin(), ref.end(), true)));
        CHECK(primes.back() <= limit);
    }
}

TEST_CASE("is_prime agrees with the sieve up to 10^6")
{
    const auto ref = oracle::eratosthenes(1'000'000);
    bool all = true;
    for (std::uint64_t n = 0; n <= 1'000'000; ++n)
        all = all && (is_prime(n) == ref[n]);
    CHECK(all);
}

TEST_CASE("is_prime examples and large inputs")
{
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(11));
    CHECK(is_prime(1'000'000'007));
    CHECK(oracle::trial_division_prime(1'000'000'007));
    // Strong pseudoprimes to several small bases.
    CHECK_FALSE(is_prime(3'215'031'751ull));
    CHECK_FALSE(is_prime(3'825'123'056'546'413'051ull));
    CHECK(is_prime(9'223'372'036'854'775'783ull)); // largest prime below 2^63
    CHECK_FALSE(is_prime(9'223'372'036'854'775'807ull));
    for (std::uint64_t n = 4'000'000'000ull; n < 4'000'002'000ull; ++n)
        REQUIRE(is_prime(n) == oracle::trial_division_prime(n));
}

TEST_CASE("moebius")
{
    CHECK(moebius(1) == 1);
    CHECK(moebius(6) == 1);
    CHECK(moebius(12) == 0);
    CHECK(moebius(30) == -1);
    CHECK_THROWS_AS((void)moebius(0), std::domain_error);
    bool multiplicative = true;
    for (std::uint64_t m = 1; m <= 1000; ++m)
        for (std::uint64_t n = 1; m * n <= 1'000'000 && n <= 1000; ++n)
            if (std::gcd(m, n) == 1)
                multiplicative = multiplicative && moebius(m * n) == moebius(m) * moebius(n);
    CHECK(multiplicative);
}

TEST_CASE("find_primitive_root")
{
    CHECK(find_primitive_root(3) == 2);
    CHECK(find_primitive_root(5) == 2);
    CHECK(find_primitive_root(7) == 3);
    CHECK_THROWS_AS((void)find_primitive_root(2), std::invalid_argument);
    CHECK_THROWS_AS((void)find_primitive_root(9), std::invalid_argument);
    for (std::uint64_t q : oracle::odd_primes_between(3, 2000)) {
        std::uint64_t g = 2;
        while (oracle::order_mod(g, q) != q - 1)
            ++g;
        REQUIRE(find_primitive_root(q) == g);
    }
}

TEST_CASE("build_field small examples")
{
    const auto f5 = build_field(5);
    CHECK(f5.g == 2);
    CHECK(f5.dlog[1] == 0);
    CHECK(f5.dlog[2] == 1);
    CHECK(f5.dlog[4] == 2);
    CHECK(f5.dlog[3] == 3);
    const auto f3 = build_field(3);
    CHECK(f3.dlog[1] == 0);
    CHECK(f3.dlog[2] == 1);
    CHECK_THROWS((void)build_field(15));
}

TEST_CASE("build_field invariants exhaustive for q <= 10^4")
{
    bool ok = true;
    for (std::uint64_t q : sieve_primes(10'000)) {
        if (q == 2)
            continue;
        const auto f = build_field(q);
        ok = ok && oracle::order_mod(f.g, q) == q - 1;
        std::vector<bool> seen(q - 1, false);
        for (std::uint64_t a = 1; a < q; ++a) {
            const auto k = f.dlog[a];
            ok = ok && k < q - 1 && !seen[k] && pow_mod(f.g, k, q) == a && f.power[k] == a;
            seen[k] = true;
        }
        ok = ok && f.dlog[1] == 0 && f.dlog[q - 1] == (q - 1) / 2;
    }
    CHECK(ok);
}

TEST_CASE("prime_reciprocal_sum")
{
    CHECK(prime_reciprocal_sum(10) == doctest::Approx(1.0 / 2 + 1.0 / 3 + 1.0 / 5 + 1.0 / 7).epsilon(1e-15));
    CHECK(prime_reciprocal_sum(2) == 0.5);
    // Oracle: Eratosthenes + separate compensated sum.
    const auto ref = oracle::eratosthenes(3'000'000);
    oracle::Sum s;
    for (std::uint64_t i = 0; i < ref.size(); ++i)
        if (ref[i])
            s.add(1.0 / static_cast<double>(i));
    CHECK(prime_reciprocal_sum(3e6) == doctest::Approx(s.value()).epsilon(1e-15));
    double prev = 0.0;
    bool monotone = true;
    for (double x = 2; x < 5000; x += 7.5) {
        const double v = prime_reciprocal_sum(x);
        monotone = monotone && v >= prev;
        prev = v;
    }
    CHECK(monotone);
}
