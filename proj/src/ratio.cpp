#include "bsr/ratio.hpp"

#include "bsr/errors.hpp"
#include "bsr/fft.hpp"
#include "bsr/specfun.hpp"
#include "bsr/summation.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bsr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDegenerate = 1e-30;

void require_modulus(const PrimeField& field)
{
    if (field.q < 3 || field.dlog.size() != field.q)
        throw std::invalid_argument("ratio: field must describe an odd prime q >= 3");
}

double odd_prefactor(double q)
{
    return 0.5 * (q - 1.0) * (std::log(std::numbers::pi) - 0.5 * std::log(q));
}

double even_prefactor(double q)
{
    return 0.5 * (q - 3.0) * (std::log(2.0) - 0.5 * std::log(q));
}

double log_abs_checked(cplx s, std::uint64_t q, std::size_t j)
{
    const double mag = std::abs(s);
    if (!(mag >= kDegenerate))
        throw NumericalDegeneracy("character sum for q=" + std::to_string(q) + ", j=" + std::to_string(j) +
                                  " vanished (|S| = " + std::to_string(mag) + ")");
    return std::log(mag);
}

// Sum of log|S_j| over one parity class.
double parity_log_total(const CharSpectrum& spectrum, bool odd)
{
    CompensatedSum acc;
    const std::size_t n = spectrum.sums.size();
    for (std::size_t j = odd ? 1 : 2; j < n; j += 2)
        acc += log_abs_checked(spectrum.sums[j], spectrum.q, j);
    return acc.value();
}

double log_q_over_q(std::uint64_t a, std::uint64_t q)
{
    return log_gamma(static_cast<double>(a) / static_cast<double>(q));
}

// Forward-error heuristic: each transform bin carries a rounding error of
// about eps * log2(n) * ||x||_1 against a bin magnitude of order sqrt(q),
// and the relative bin error passes straight into its log.
double transform_budget(std::uint64_t q, double chars, double l1)
{
    const double levels = std::bit_width(q);
    return kEps * levels * chars * l1 / std::sqrt(static_cast<double>(q));
}

struct ParitySpectra {
    CharSpectrum odd;  // of f(a) = a/q
    CharSpectrum even; // of f(a) = log Gamma(a/q)
    double even_l1 = 0.0; // sum_a |log Gamma(a/q)|
};

ParitySpectra parity_spectra(const PrimeField& field, const RatioOptions& options, bool need_odd, bool need_even)
{
    const std::uint64_t q = field.q;
    const double qd = static_cast<double>(q);
    ResidueFunction linear = [qd](std::uint64_t a) { return static_cast<double>(a) / qd; };
    CompensatedSum l1;
    ResidueFunction lgam = [q, &l1](std::uint64_t a) {
        const double v = log_q_over_q(a, q);
        l1 += std::abs(v);
        return v;
    };
    ParitySpectra out;
    if (options.decimation) {
        const DftPlan half(field.order() / 2);
        if (need_odd)
            out.odd = char_spectrum_decimated(field, linear, half);
        if (need_even)
            out.even = char_spectrum_decimated(field, lgam, half);
    } else {
        const DftPlan full(field.order());
        if (need_odd)
            out.odd = char_spectrum(field, linear, full);
        if (need_even)
            out.even = char_spectrum(field, lgam, full);
    }
    out.even_l1 = l1.value();
    return out;
}

RatioRecord make_record(std::uint64_t q, double odd, double even, RatioMethod method, double err_est)
{
    RatioRecord r;
    r.q = q;
    r.odd_part = odd;
    r.even_part = even;
    r.log_R = odd + even;
    r.R = std::exp(r.log_R);
    r.method = method;
    r.err_est = err_est;
    return r;
}

} // namespace

std::string_view to_string(RatioMethod method) noexcept
{
    switch (method) {
    case RatioMethod::FFT:
        return "FFT";
    case RatioMethod::DIGAMMA:
        return "DIGAMMA";
    case RatioMethod::NAIVE:
        return "NAIVE";
    }
    return "?";
}

double odd_log_sum(const PrimeField& field, const RatioOptions& options)
{
    require_modulus(field);
    const auto spectra = parity_spectra(field, options, true, false);
    return odd_prefactor(static_cast<double>(field.q)) + parity_log_total(spectra.odd, true);
}

double even_log_sum(const PrimeField& field, const RatioOptions& options)
{
    require_modulus(field);
    if (field.q == 3)
        return 0.0;
    const auto spectra = parity_spectra(field, options, false, true);
    return even_prefactor(static_cast<double>(field.q)) + parity_log_total(spectra.even, false);
}

RatioRecord log_ratio_fft(const PrimeField& field, const RatioOptions& options)
{
    require_modulus(field);
    const std::uint64_t q = field.q;
    const double qd = static_cast<double>(q);
    const auto spectra = parity_spectra(field, options, true, q > 3);

    const double pre_odd = odd_prefactor(qd);
    const double pre_even = even_prefactor(qd);
    const double odd = pre_odd + parity_log_total(spectra.odd, true);
    const double even = q > 3 ? pre_even + parity_log_total(spectra.even, false) : 0.0;

    const double odd_chars = 0.5 * (qd - 1.0);
    const double even_chars = 0.5 * (qd - 3.0);
    const double err = transform_budget(q, odd_chars, odd_chars) + transform_budget(q, even_chars, spectra.even_l1) +
                       kEps * (std::abs(pre_odd) + std::abs(pre_even));
    return make_record(q, odd, even, RatioMethod::FFT, err);
}

RatioRecord log_ratio_digamma(const PrimeField& field)
{
    require_modulus(field);
    const std::uint64_t q = field.q;
    const double qd = static_cast<double>(q);
    CompensatedSum l1;
    ResidueFunction psi = [&](std::uint64_t a) {
        const double v = digamma(static_cast<double>(a) / qd);
        l1 += std::abs(v);
        return v;
    };
    const auto spectrum = char_spectrum(field, psi);
    // -(q-2) log q split as (q-1)/2 odd and (q-3)/2 even characters.
    const double log_q = std::log(qd);
    const double odd = -0.5 * (qd - 1.0) * log_q + parity_log_total(spectrum, true);
    const double even = q > 3 ? -0.5 * (qd - 3.0) * log_q + parity_log_total(spectrum, false) : 0.0;
    const double err = transform_budget(q, qd - 2.0, l1.value()) + kEps * (qd - 2.0) * log_q;
    return make_record(q, odd, even, RatioMethod::DIGAMMA, err);
}

namespace {

// S_j = sum_a f(a) chi_j(a) for every j, by explicit double loop.
std::vector<cplx> naive_sums(const PrimeField& field, const std::vector<double>& f_odd,
                             const std::vector<double>& f_even)
{
    const std::size_t n = field.order();
    std::vector<cplx> roots(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n);
        roots[t] = {std::cos(angle), std::sin(angle)};
    }
    std::vector<cplx> sums(n);
    for (std::size_t j = 1; j < n; ++j) {
        const auto& f = (j % 2 == 1) ? f_odd : f_even;
        CompensatedSum re, im;
        // chi_j(g^k) = e(jk/n); f indexed by k.
        std::size_t t = 0;
        for (std::size_t k = 0; k < n; ++k) {
            re += f[k] * roots[t].real();
            im += f[k] * roots[t].imag();
            t += j;
            if (t >= n)
                t -= n;
        }
        sums[j] = {re.value(), im.value()};
    }
    return sums;
}

struct NaiveResult {
    std::vector<cplx> sums;
};

NaiveResult naive_character_sums(const PrimeField& field, std::uint64_t cost_guard)
{
    require_modulus(field);
    if (field.q > cost_guard)
        throw CostGuardExceeded("naive evaluation refused: q=" + std::to_string(field.q) +
                                " exceeds cost guard " + std::to_string(cost_guard));
    const std::size_t n = field.order();
    const double qd = static_cast<double>(field.q);
    std::vector<double> f_odd(n), f_even(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t a = field.power[k];
        f_odd[k] = static_cast<double>(a) / qd;
        f_even[k] = log_gamma(static_cast<double>(a) / qd);
    }
    return {naive_sums(field, f_odd, f_even)};
}

} // namespace

std::vector<double> naive_L1_moduli(const PrimeField& field, std::uint64_t cost_guard)
{
    const auto result = naive_character_sums(field, cost_guard);
    const double root_q = std::sqrt(static_cast<double>(field.q));
    std::vector<double> out(field.order(), 0.0);
    for (std::size_t j = 1; j < out.size(); ++j) {
        const double scale = (j % 2 == 1) ? std::numbers::pi / root_q : 2.0 / root_q;
        out[j] = scale * std::abs(result.sums[j]);
    }
    return out;
}

RatioRecord log_ratio_naive(const PrimeField& field, std::uint64_t cost_guard)
{
    const auto result = naive_character_sums(field, cost_guard);
    const std::uint64_t q = field.q;
    const double qd = static_cast<double>(q);
    CompensatedSum odd(odd_prefactor(qd));
    CompensatedSum even(q > 3 ? even_prefactor(qd) : 0.0);
    for (std::size_t j = 1; j < result.sums.size(); ++j) {
        const double v = log_abs_checked(result.sums[j], q, j);
        (j % 2 == 1 ? odd : even) += v;
    }
    // Compensated accumulation: error ~ eps * (q-2) * max|log S_j|, plus
    // the O(eps sqrt(q)) per-sum rounding seen relative to |S_j| ~ sqrt(q).
    const double err = kEps * qd * (std::log(qd) + 1.0);
    return make_record(q, odd.value(), even.value(), RatioMethod::NAIVE, err);
}

double log_H(std::uint64_t q)
{
    if (q < 3)
        throw std::invalid_argument("log_H: q must be >= 3");
    const double qd = static_cast<double>(q);
    const double log_q = std::log(qd);
    CompensatedSum acc(std::log(2.0));
    acc += 0.5 * log_q;
    acc += 0.5 * (qd - 1.0) * log_q;
    acc -= 0.5 * (qd - 1.0) * std::log(2.0 * std::numbers::pi);
    return acc.value();
}

double log_hreg(const RatioRecord& record)
{
    CompensatedSum acc(record.log_R);
    acc += log_H(record.q);
    return acc.value();
}

} // namespace bsr
