#include "bsr/bounds.hpp"

#include "bsr/constants.hpp"
#include "bsr/ntheory.hpp"
#include "bsr/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bsr {

namespace {

constexpr double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;
const double kEnvelopeLow = std::exp(-1.87);
const double kEnvelopeHigh = std::exp(0.51);

void require_q(std::uint64_t q)
{
    if (q < 3)
        throw std::invalid_argument("bounds: q must be >= 3");
}

} // namespace

double lemma1_bound(std::uint64_t q)
{
    require_q(q);
    const double A = constants().A_const;
    return A + (kZeta2 - A) / static_cast<double>(q);
}

double refined_bound(std::uint64_t q)
{
    require_q(q);
    const double qd = static_cast<double>(q);
    const double A = constants().A_const;
    // psi(x) = psi(1 + x) - 1/x turns -(q-1)/2 + ((q-1)/q)(q - q/2) into 0.
    return (qd - 1.0) / qd * (A + digamma(1.0 + 2.0 / qd) - digamma(1.0 + 1.0 / qd));
}

bool check_envelope(const RatioRecord& record)
{
    const double log_q = std::log(static_cast<double>(record.q));
    return kEnvelopeLow / log_q < record.R && record.R < kEnvelopeHigh * log_q;
}

bool normalized_in_band(const RatioRecord& record)
{
    const double v = record.R * std::pow(std::log(static_cast<double>(record.q)), 0.75);
    return kNormalizedLow < v && v < kNormalizedHigh;
}

double dusart_deviation(double x)
{
    if (!(x >= kDusartThreshold))
        throw std::domain_error("check_dusart: x must be >= 2278383");
    return std::abs(prime_reciprocal_sum(x) - std::log(std::log(x)) - constants().meissel_mertens);
}

bool check_dusart(double x)
{
    const double L = std::log(x);
    return dusart_deviation(x) <= 0.2 / (L * L * L);
}

Envelope siegel_envelope(std::uint64_t q, double beta0, double ell)
{
    require_q(q);
    if (!(beta0 < 1.0))
        throw std::domain_error("siegel_envelope: beta0 must be < 1");
    const double log_q = std::log(static_cast<double>(q));
    const double damp = std::exp(-exp_integral_E1(1.0 - beta0));
    const double scale = log_q * log_q * ell;
    return {kEnvelopeLow * damp / scale, kEnvelopeHigh * damp * scale};
}

BoundReport bound_report(const RatioRecord& record, std::optional<double> sigma2)
{
    BoundReport report;
    report.q = record.q;
    report.lemma1_bound = lemma1_bound(record.q);
    report.refined_bound = refined_bound(record.q);
    report.envelope_ok = check_envelope(record);
    if (sigma2)
        report.sigma2_ok = std::abs(*sigma2) <= report.lemma1_bound;
    return report;
}

} // namespace bsr
