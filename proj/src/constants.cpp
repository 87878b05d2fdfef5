#include "bsr/constants.hpp"

#include "bsr/ntheory.hpp"
#include "bsr/specfun.hpp"
#include "bsr/summation.hpp"

#include <cmath>
#include <stdexcept>

namespace bsr {

namespace {

constexpr std::uint64_t kADirectTerms = 1'000'000;
constexpr std::uint64_t kPrimeZetaCutoff = 100;

double alpha(std::uint64_t j)
{
    return 0.5 * static_cast<double>(j) * static_cast<double>(j - 1);
}

// Integral over t in [J, inf) of psi(alpha(t)) / alpha(t), from the
// expansion psi(x) = log x - 1/(2x) - 1/(12 x^2) + O(x^-4) and
// alpha(t) = t^2 (1 - 1/t) / 2, integrated termwise through t^-3.
double A_tail_integral(double J)
{
    const double L = std::log(J);
    const double ln2 = std::log(2.0);
    // psi(alpha)/alpha = (2/t^2)(1 + 1/t + 1/t^2)(2 log t - log 2 - 1/t - 1/(2t^2))
    //                    - 2/t^4 + O(log t / t^5)
    //   = 2(2 log t - log 2)/t^2 + 2(2 log t - log 2 - 1)/t^3 + O(log t / t^4)
    const double i2_log = (L + 1.0) / J;                 // int log t / t^2
    const double i2 = 1.0 / J;                           // int 1 / t^2
    const double i3_log = (L / 2.0 + 0.25) / (J * J);    // int log t / t^3
    const double i3 = 0.5 / (J * J);                     // int 1 / t^3
    return 2.0 * (2.0 * i2_log - ln2 * i2) + 2.0 * (2.0 * i3_log - (ln2 + 1.0) * i3);
}

} // namespace

double constant_A_partial(std::uint64_t last)
{
    CompensatedSum sum;
    // Smallest terms first.
    for (std::uint64_t j = last; j >= 3; --j) {
        const double a = alpha(j);
        sum += digamma(a) / a;
    }
    return 0.5 * kEulerGamma + 0.5 * sum.value();
}

double constant_A()
{
    const double J = static_cast<double>(kADirectTerms);
    // Euler-Maclaurin: sum_{j>J} F(j) = int_J^inf F - F(J)/2 + O(F'(J)).
    const double aJ = alpha(kADirectTerms);
    const double tail = A_tail_integral(J) - 0.5 * digamma(aJ) / aJ;
    return constant_A_partial(kADirectTerms) + 0.5 * tail;
}

double c1(int k)
{
    if (k < 3 || k % 2 == 0)
        throw std::domain_error("c1: k must be odd and >= 3");
    CompensatedSum harmonic;
    for (int j = (k - 1) / 2; j >= 1; --j)
        harmonic += 1.0 / j;
    return 0.25 * harmonic.value() - std::log(std::log(static_cast<double>(k)));
}

C1Minimum minimize_c1()
{
    C1Minimum best{3, c1(3)};
    for (int k = 5; k <= 10'000; k += 2) {
        const double v = c1(k);
        if (v < best.value)
            best = {k, v};
    }
    return best;
}

double prime_zeta_tail(int s, std::uint64_t cutoff)
{
    if (s < 2)
        throw std::domain_error("prime_zeta_tail: s must be >= 2");
    const auto small = sieve_primes(cutoff);
    const double N = static_cast<double>(cutoff < 2 ? 1 : cutoff);
    // log zeta_N(n) = log zeta(n) + sum_{p<=N} log(1 - p^-n), |.| <= N^{1-n}/(n-1).
    auto log_zeta_truncated = [&](int n) {
        CompensatedSum acc(std::log1p(detail::hurwitz_zeta_any(n, 2.0)));
        for (const auto p : small)
            acc += std::log1p(-std::pow(static_cast<double>(p), -n));
        return acc.value();
    };
    CompensatedSum total;
    for (int k = 1;; ++k) {
        const int n = k * s;
        const double bound = std::pow(N, 1.0 - n) / (n - 1);
        if (bound < 1e-22)
            break;
        const int mu = moebius(static_cast<std::uint64_t>(k));
        if (mu != 0)
            total += mu * log_zeta_truncated(n) / k;
    }
    return total.value();
}

double prime_power_sum(std::uint64_t excluded)
{
    // Primes up to the cutoff exactly: -log(1 - 1/p) - 1/p.
    CompensatedSum sum;
    for (const auto p : sieve_primes(kPrimeZetaCutoff)) {
        if (p == excluded)
            continue;
        const double inv = 1.0 / static_cast<double>(p);
        sum += -std::log1p(-inv) - inv;
    }
    // Primes above it through the prime zeta tails: sum_{m>=2} P_N(m) / m.
    const double N = static_cast<double>(kPrimeZetaCutoff);
    for (int m = 2;; ++m) {
        if (std::pow(N, 1.0 - m) / (m - 1) < 1e-22)
            break;
        sum += prime_zeta_tail(m, kPrimeZetaCutoff) / m;
    }
    if (excluded > kPrimeZetaCutoff) {
        const double inv = 1.0 / static_cast<double>(excluded);
        sum -= -std::log1p(-inv) - inv;
    }
    return sum.value();
}

double meissel_mertens()
{
    return kEulerGamma - prime_power_sum(0);
}

const ConstantsTable& constants()
{
    static const ConstantsTable table = [] {
        ConstantsTable t;
        t.gamma_euler = kEulerGamma;
        t.meissel_mertens = meissel_mertens();
        t.A_const = constant_A();
        const auto c1min = minimize_c1();
        t.k_opt = c1min.k_opt;
        t.C1_const = c1min.value;
        return t;
    }();
    return table;
}

} // namespace bsr
