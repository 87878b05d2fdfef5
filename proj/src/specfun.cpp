#include "bsr/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bsr {

namespace {

using ld = long double;

// B_2, B_4, ..., B_20.
constexpr std::array<ld, 10> kBernoulliEven{
    1.0L / 6.0L,        -1.0L / 30.0L,        1.0L / 42.0L,     -1.0L / 30.0L,      5.0L / 66.0L,
    -691.0L / 2730.0L,  7.0L / 6.0L,          -3617.0L / 510.0L, 43867.0L / 798.0L, -174611.0L / 330.0L,
};

constexpr ld kHalfLogTwoPi = 0.918938533204672741780329736405617639861L;

// Below this the asymptotic series are not used; the argument is shifted up.
constexpr ld kAsymptoticThreshold = 15.0L;

void require_positive(const char* name, double x)
{
    if (!(x > 0.0))
        throw std::domain_error(std::string(name) + ": argument must be > 0");
}

ld stirling_log_gamma(ld z)
{
    const ld inv = 1.0L / z;
    const ld inv2 = inv * inv;
    ld series = 0.0L;
    ld power = inv;
    for (std::size_t k = 1; k <= kBernoulliEven.size(); ++k) {
        series += kBernoulliEven[k - 1] / static_cast<ld>((2 * k) * (2 * k - 1)) * power;
        power *= inv2;
    }
    return (z - 0.5L) * std::log(z) - z + kHalfLogTwoPi + series;
}

ld asymptotic_digamma(ld z)
{
    const ld inv2 = 1.0L / (z * z);
    ld series = 0.0L;
    ld power = inv2;
    for (std::size_t k = 1; k <= kBernoulliEven.size(); ++k) {
        series += kBernoulliEven[k - 1] / static_cast<ld>(2 * k) * power;
        power *= inv2;
    }
    return std::log(z) - 0.5L / z - series;
}

} // namespace

double log_gamma(double x)
{
    require_positive("log_gamma", x);
    ld z = x;
    ld product = 1.0L;
    while (z < kAsymptoticThreshold) {
        product *= z;
        z += 1.0L;
    }
    return static_cast<double>(stirling_log_gamma(z) - std::log(product));
}

double digamma(double x)
{
    require_positive("digamma", x);
    ld z = x;
    ld shift = 0.0L;
    while (z < kAsymptoticThreshold) {
        shift += 1.0L / z;
        z += 1.0L;
    }
    return static_cast<double>(asymptotic_digamma(z) - shift);
}

double exp_integral_E1(double x)
{
    require_positive("exp_integral_E1", x);
    if (x <= 1.0) {
        // E1(x) = -gamma - log x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
        ld term = 1.0L;
        ld sum = 0.0L;
        for (int k = 1; k < 60; ++k) {
            term *= -static_cast<ld>(x) / k;
            const ld contrib = -term / k;
            sum += contrib;
            if (std::abs(contrib) < 1e-21L * std::abs(sum))
                break;
        }
        return static_cast<double>(-static_cast<ld>(kEulerGamma) - std::log(static_cast<ld>(x)) + sum);
    }
    // Continued fraction e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))), modified Lentz.
    constexpr ld tiny = 1e-300L;
    ld b = x + 1.0L;
    ld c = 1.0L / tiny;
    ld d = 1.0L / b;
    ld h = d;
    for (int i = 1; i < 500; ++i) {
        const ld an = -static_cast<ld>(i) * i;
        b += 2.0L;
        d = 1.0L / (an * d + b);
        c = b + an / c;
        const ld del = c * d;
        h *= del;
        if (std::abs(del - 1.0L) < 1e-20L)
            break;
    }
    return static_cast<double>(h * std::exp(-static_cast<ld>(x)));
}

namespace detail {

double hurwitz_zeta_any(int n, double x)
{
    if (n < 2)
        throw std::domain_error("hurwitz_zeta: order must be >= 2");
    require_positive("hurwitz_zeta", x);
    // Direct head, then Euler-Maclaurin tail at a = x + N with eight
    // Bernoulli corrections.
    const int head = n > 20 ? n : 20;
    const ld s = n;
    ld sum = 0.0L;
    for (int k = head - 1; k >= 0; --k)
        sum += std::pow(static_cast<ld>(x) + k, -s);
    const ld a = static_cast<ld>(x) + head;
    const ld a_pow = std::pow(a, -s);
    ld tail = a * a_pow / (s - 1.0L) + 0.5L * a_pow;
    // term_j = B_2j / (2j)! * s (s+1) ... (s+2j-2) * a^(-s-2j+1)
    ld rising = s;       // s (s+1) ... (s+2j-2)
    ld factorial = 2.0L; // (2j)!
    ld power = a_pow / a;
    for (int j = 1; j <= 8; ++j) {
        tail += kBernoulliEven[static_cast<std::size_t>(j - 1)] / factorial * rising * power;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        factorial *= static_cast<ld>(2 * j + 1) * (2 * j + 2);
        power /= a * a;
    }
    return static_cast<double>(sum + tail);
}

} // namespace detail

double hurwitz_zeta(int n, double x)
{
    if (n < 2)
        throw std::domain_error("hurwitz_zeta: order must be >= 2");
    if (!(x > 0.0 && x <= 1.0))
        throw std::domain_error("hurwitz_zeta: x must lie in (0, 1]");
    return detail::hurwitz_zeta_any(n, x);
}

} // namespace bsr
