#include "bsr/fft.hpp"

#include "bsr/summation.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bsr {

namespace {

// Plain (a.re b.re - a.im b.im, ...) product; std::complex's operator*
// goes through the Annex G NaN recovery path, which we never need.
inline cplx mul(cplx a, cplx b) noexcept
{
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// e(num / den) = exp(2 pi i num / den), evaluated from a reduced fraction.
cplx unit_root(std::uint64_t num, std::uint64_t den)
{
    num %= den;
    // Map to (-den/2, den/2] so the angle has magnitude <= pi.
    const double frac = 2.0 * static_cast<double>(num) <= static_cast<double>(den)
                            ? static_cast<double>(num) / static_cast<double>(den)
                            : -static_cast<double>(den - num) / static_cast<double>(den);
    const double angle = 2.0 * std::numbers::pi * frac;
    return {std::cos(angle), std::sin(angle)};
}

} // namespace

ComplexSeq dft_naive(std::span<const cplx> x, Direction dir)
{
    const std::size_t n = x.size();
    if (n == 0)
        throw std::invalid_argument("dft_naive: empty input");
    std::vector<cplx> roots(n);
    for (std::size_t t = 0; t < n; ++t) {
        roots[t] = unit_root(t, n);
        if (dir == Direction::Forward)
            roots[t] = std::conj(roots[t]);
    }
    ComplexSeq out(n);
    for (std::size_t j = 0; j < n; ++j) {
        CompensatedComplexSum acc;
        std::size_t t = 0;
        for (std::size_t k = 0; k < n; ++k) {
            acc += mul(x[k], roots[t]);
            t += j;
            if (t >= n)
                t %= n;
        }
        out[j] = acc.value();
    }
    return out;
}

DftPlan::DftPlan(std::size_t n) : n_(n)
{
    if (n == 0)
        throw std::invalid_argument("DftPlan: length must be >= 1");
    const bool pow2 = std::has_single_bit(n);
    m_ = pow2 ? n : std::bit_ceil(2 * n - 1);

    twiddle_.resize(m_ / 2);
    for (std::size_t i = 0; i < m_ / 2; ++i)
        twiddle_[i] = std::conj(unit_root(i, m_));
    bitrev_.resize(m_);
    const int bits = std::countr_zero(m_);
    for (std::size_t i = 0; i < m_; ++i) {
        std::uint32_t r = 0;
        for (int b = 0; b < bits; ++b)
            if (i & (std::size_t{1} << b))
                r |= 1u << (bits - 1 - b);
        bitrev_[i] = r;
    }

    if (pow2)
        return;

    chirp_.resize(n);
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
    for (std::uint64_t k = 0; k < n; ++k)
        chirp_[k] = std::conj(unit_root(k * k % two_n, two_n));
    filter_hat_.assign(m_, cplx{});
    filter_hat_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n; ++k) {
        filter_hat_[k] = std::conj(chirp_[k]);
        filter_hat_[m_ - k] = std::conj(chirp_[k]);
    }
    radix2(filter_hat_, Direction::Forward);
}

void DftPlan::radix2(std::vector<cplx>& a, Direction dir) const
{
    const std::size_t m = a.size();
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t r = bitrev_[i];
        if (i < r)
            std::swap(a[i], a[r]);
    }
    const bool inverse = dir == Direction::Backward;
    for (std::size_t len = 2; len <= m; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = m / len;
        for (std::size_t start = 0; start < m; start += len) {
            for (std::size_t i = 0; i < half; ++i) {
                cplx w = twiddle_[i * stride];
                if (inverse)
                    w = std::conj(w);
                const cplx u = a[start + i];
                const cplx v = mul(a[start + i + half], w);
                a[start + i] = u + v;
                a[start + i + half] = u - v;
            }
        }
    }
}

ComplexSeq DftPlan::execute(std::span<const cplx> x, Direction dir) const
{
    if (x.size() != n_)
        throw std::invalid_argument("DftPlan::execute: length mismatch");
    if (chirp_.empty()) {
        ComplexSeq a(x.begin(), x.end());
        radix2(a, dir);
        return a;
    }
    // Backward transform = conj(forward(conj(x))).
    const bool backward = dir == Direction::Backward;
    std::vector<cplx> a(m_, cplx{});
    for (std::size_t k = 0; k < n_; ++k)
        a[k] = mul(backward ? std::conj(x[k]) : x[k], chirp_[k]);
    radix2(a, Direction::Forward);
    for (std::size_t i = 0; i < m_; ++i)
        a[i] = mul(a[i], filter_hat_[i]);
    radix2(a, Direction::Backward);
    const double scale = 1.0 / static_cast<double>(m_);
    ComplexSeq out(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        const cplx v = mul(a[j], chirp_[j]) * scale;
        out[j] = backward ? std::conj(v) : v;
    }
    return out;
}

ComplexSeq dft_fast(std::span<const cplx> x, Direction dir)
{
    return DftPlan(x.size()).execute(x, dir);
}

ComplexSeq idft_fast(std::span<const cplx> x)
{
    auto out = dft_fast(x, Direction::Backward);
    const double scale = 1.0 / static_cast<double>(x.size());
    for (auto& v : out)
        v *= scale;
    return out;
}

CharSpectrum char_spectrum(const PrimeField& field, const ResidueFunction& f, const DftPlan& plan)
{
    const std::size_t n = field.order();
    if (plan.size() != n)
        throw std::invalid_argument("char_spectrum: plan length must be q - 1");
    ComplexSeq x(n);
    for (std::size_t k = 0; k < n; ++k)
        x[k] = f(field.power[k]);
    return {field.q, plan.execute(x, Direction::Backward)};
}

CharSpectrum char_spectrum(const PrimeField& field, const ResidueFunction& f)
{
    return char_spectrum(field, f, DftPlan(field.order()));
}

CharSpectrum char_spectrum_decimated(const PrimeField& field, const ResidueFunction& f,
                                     const DftPlan& half_plan)
{
    const std::size_t n = field.order();
    const std::size_t h = n / 2;
    if (half_plan.size() != h)
        throw std::invalid_argument("char_spectrum_decimated: plan length must be (q - 1) / 2");
    // g^(k + h) = -g^k, so x[k + h] = f(q - a) for a = g^k.
    ComplexSeq sum(h), diff(h);
    for (std::size_t k = 0; k < h; ++k) {
        const std::uint64_t a = field.power[k];
        const double lo = f(a);
        const double hi = f(field.q - a);
        sum[k] = lo + hi;
        diff[k] = (lo - hi) * unit_root(k, n);
    }
    const auto even = half_plan.execute(sum, Direction::Backward);
    const auto odd = half_plan.execute(diff, Direction::Backward);
    CharSpectrum out{field.q, ComplexSeq(n)};
    for (std::size_t m = 0; m < h; ++m) {
        out.sums[2 * m] = even[m];
        out.sums[2 * m + 1] = odd[m];
    }
    return out;
}

ParitySplit parity_split(const CharSpectrum& spectrum)
{
    ParitySplit split;
    const std::size_t n = spectrum.sums.size();
    split.odd.reserve(n / 2);
    split.even_nonprincipal.reserve(n / 2);
    for (std::size_t j = 1; j < n; ++j)
        (j % 2 == 1 ? split.odd : split.even_nonprincipal).push_back(j);
    return split;
}

} // namespace bsr
