#include "bsr/primesum.hpp"

#include "bsr/constants.hpp"
#include "bsr/errors.hpp"
#include "bsr/ratio.hpp"
#include "bsr/specfun.hpp"
#include "bsr/summation.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bsr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_prime_modulus(std::uint64_t q)
{
    if (q < 3 || !is_prime(q))
        throw std::invalid_argument("primesum: " + std::to_string(q) + " is not an odd prime");
}

void require_guard(std::uint64_t q, std::uint64_t cost_guard)
{
    if (q > cost_guard)
        throw CostGuardExceeded("prime-sum verifier refused: q=" + std::to_string(q) + " exceeds cost guard " +
                                std::to_string(cost_guard));
}

// Re log(1 - e(t/(q-1)) x) = (1/2) log1p(-2 x cos + x^2); below 1e-8 the
// cubic Taylor polynomial of log1p is exact to double precision.
inline double half_log1p(double cos_t, double x, double x2) noexcept
{
    const double u = -2.0 * cos_t * x + x2;
    if (x < 1e-8)
        return 0.5 * (u - 0.5 * u * u + u * u * u / 3.0);
    return 0.5 * std::log1p(u);
}

std::vector<double> cos_table(std::uint64_t n)
{
    std::vector<double> out(n);
    for (std::uint64_t t = 0; t < n; ++t) {
        // cos(2 pi t / n) with the angle folded into [0, pi].
        const std::uint64_t r = 2 * t <= n ? t : n - t;
        out[t] = std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
    }
    return out;
}

// Re sum_{p <= P, p != q} log(1 - chi_i(p) p^-s) for i = 0, stride, 2 stride, ...
// Entry r of the result belongs to i = r * stride.
std::vector<double> prime_factor_logs(const PrimeField& field, const PrimeTable& table, const std::vector<double>& cosines,
                                      double s, std::uint64_t stride)
{
    const std::uint64_t n = field.order();
    const std::uint64_t count = n / stride;
    std::vector<double> acc(count, 0.0);
    for (std::size_t idx = 0; idx < table.primes.size(); ++idx) {
        const double x = std::pow(static_cast<double>(table.primes[idx]), -s);
        const double x2 = x * x;
        const std::uint64_t step = stride * table.dlogs[idx] % n;
        std::uint64_t t = 0;
        for (std::uint64_t r = 0; r < count; ++r) {
            acc[r] += half_log1p(cosines[t], x, x2);
            t += step;
            if (t >= n)
                t -= n;
        }
    }
    return acc;
}

double lz_bound(std::uint64_t P, int n)
{
    return std::pow(static_cast<double>(P), 1.0 - n) / (n - 1);
}

} // namespace

double log_e1_bound(std::uint64_t q, std::uint64_t P, int M)
{
    const double Pd = static_cast<double>(P);
    const double logP = std::log(Pd);
    return logP + std::log(static_cast<double>(q - 1)) - std::log(static_cast<double>(M)) -
           std::log(static_cast<double>(M - 1)) - std::log(Pd - 1.0) - M * logP;
}

double log_e2_bound(std::uint64_t q, std::uint64_t P, int K)
{
    const double Pd = static_cast<double>(P);
    const double logP = std::log(Pd);
    // log(P^K - 1) = K log P + log1p(-P^-K)
    const double log_pk_minus_1 = K * logP + std::log1p(-std::exp(-K * logP));
    return std::log(2.0) + logP + std::log(static_cast<double>(q - 1)) - 2.0 * std::log(static_cast<double>(K)) -
           std::log(Pd - 1.0) - log_pk_minus_1;
}

TruncationPlan choose_plan(std::uint64_t q, std::uint64_t A, int delta)
{
    if (q < 3)
        throw std::invalid_argument("choose_plan: q must be >= 3");
    if (A < 1 || delta < 1)
        throw std::invalid_argument("choose_plan: A and delta must be >= 1");
    TruncationPlan plan;
    plan.q = q;
    plan.A = A;
    plan.P = A * q;
    plan.delta = delta;
    const double log_half_target = -delta * std::log(10.0) - std::log(2.0);
    plan.M = 2;
    while (log_e1_bound(q, plan.P, plan.M) >= log_half_target)
        ++plan.M;
    plan.K = 1;
    while (log_e2_bound(q, plan.P, plan.K) >= log_half_target)
        ++plan.K;
    plan.e1_bound = std::exp(log_e1_bound(q, plan.P, plan.M));
    plan.e2_bound = std::exp(log_e2_bound(q, plan.P, plan.K));
    return plan;
}

PrimeTable prime_table(const PrimeField& field, std::uint64_t P)
{
    PrimeTable table;
    for_each_prime(P, [&](std::uint64_t p) {
        if (p == field.q)
            return;
        table.primes.push_back(p);
        table.dlogs.push_back(field.dlog[p % field.q]);
    });
    return table;
}

std::vector<cplx> L_values(const PrimeField& field, int n)
{
    if (n < 2)
        throw std::domain_error("L_values: n must be >= 2");
    const double qd = static_cast<double>(field.q);
    const double q_pow = std::pow(qd, -n);
    // sum_{k>=0} (a + kq)^-n = a^-n + q^-n zeta(n, 1 + a/q)
    ResidueFunction residue_sum = [&](std::uint64_t a) {
        const double ad = static_cast<double>(a);
        return std::pow(ad, -n) + q_pow * detail::hurwitz_zeta_any(n, 1.0 + ad / qd);
    };
    return char_spectrum(field, residue_sum).sums;
}

cplx truncated_log_L(int n, std::uint64_t j, const PrimeField& field, std::uint64_t P)
{
    if (n < 2)
        throw std::domain_error("truncated_log_L: n must be >= 2");
    const std::uint64_t order = field.order();
    if (j % order == 0)
        throw std::invalid_argument("truncated_log_L: principal character excluded");
    j %= order;
    const auto L = L_values(field, n);
    CompensatedComplexSum acc;
    acc += std::log(L[j]);
    double magnitude = 0.0;
    for_each_prime(P, [&](std::uint64_t p) {
        if (p == field.q)
            return;
        const std::uint64_t t = j * field.dlog[p % field.q] % order;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(order);
        const double x = std::pow(static_cast<double>(p), -n);
        magnitude += x;
        acc += std::log(cplx{1.0 - x * std::cos(angle), -x * std::sin(angle)});
    });
    const cplx value = acc.value();
    const double slack = 64.0 * kEps * (std::bit_width(field.q) + 1.0) * (3.0 + magnitude);
    if (std::abs(value) > lz_bound(P, n) + slack)
        throw VerificationFailure("truncated L bound violated at n=" + std::to_string(n) + ", j=" + std::to_string(j));
    return value;
}

double head_sum(const PrimeField& field, std::uint64_t P)
{
    const auto table = prime_table(field, P);
    const auto cosines = cos_table(field.order());
    const auto logs = prime_factor_logs(field, table, cosines, 1.0, 1);
    CompensatedSum acc;
    for (std::size_t i = 1; i < logs.size(); ++i)
        acc -= logs[i];
    return acc.value();
}

namespace {

struct Breakdown {
    double head_sigma1 = 0.0;     // sum_chi sum_{p<=P} Re chi(p)/p
    double head_total = 0.0;      // r(q, P)
    std::vector<double> tail_m;   // index m: (1/m) sum_k (mu(k)/k) sum_chi Re log L_P(km, chi^km)
    std::size_t lemma_checks = 0;
};

// One pass over all (m, k) pairs of the plan. L1 moduli are needed only
// when m = 1 is included (min_m == 1).
Breakdown evaluate(const PrimeField& field, const TruncationPlan& plan, int min_m, int max_m,
                   std::span<const double> L1_moduli)
{
    const std::uint64_t q = field.q;
    const std::uint64_t order = field.order();
    const auto table = prime_table(field, plan.P);
    const auto cosines = cos_table(order);
    Breakdown out;

    // Head: r(q, P) and its m = 1 part through orthogonality,
    // sum_{chi != chi0} chi(p) = (q-1)[p = 1 mod q] - 1.
    const auto head_logs = prime_factor_logs(field, table, cosines, 1.0, 1);
    CompensatedSum head, head1;
    for (std::size_t i = 1; i < head_logs.size(); ++i)
        head -= head_logs[i];
    for (std::size_t idx = 0; idx < table.primes.size(); ++idx) {
        const double inv = 1.0 / static_cast<double>(table.primes[idx]);
        head1 += (table.dlogs[idx] == 0 ? static_cast<double>(q - 2) : -1.0) * inv;
    }
    out.head_total = head.value();
    out.head_sigma1 = head1.value();

    out.tail_m.assign(static_cast<std::size_t>(max_m) + 1, 0.0);
    std::vector<CompensatedSum> tails(static_cast<std::size_t>(max_m) + 1);

    // Re log L_P(n, chi_i) over the characters i reachable as j n mod (q-1).
    std::map<int, std::pair<std::uint64_t, std::vector<double>>> cache;
    auto table_for = [&](int n) -> const std::pair<std::uint64_t, std::vector<double>>& {
        if (auto it = cache.find(n); it != cache.end())
            return it->second;
        const std::uint64_t stride = std::gcd(static_cast<std::uint64_t>(n), order);
        auto logs = prime_factor_logs(field, table, cosines, n, stride);
        const auto L = L_values(field, n);
        double l1 = 0.0;
        for (const auto& v : L)
            l1 = std::max(l1, std::abs(v));
        double factor_mass = 0.0;
        for (const auto p : table.primes)
            factor_mass += std::pow(static_cast<double>(p), -n);
        const double slack = 64.0 * kEps * (std::bit_width(q) + 1.0) * (1.0 + l1 + factor_mass);
        const double bound = lz_bound(plan.P, n);
        for (std::size_t r = 0; r < logs.size(); ++r) {
            logs[r] += std::log(std::abs(L[r * stride]));
            ++out.lemma_checks;
            if (std::abs(logs[r]) > bound + slack)
                throw VerificationFailure("truncated L bound violated: q=" + std::to_string(q) + ", n=" +
                                          std::to_string(n) + ", character " + std::to_string(r * stride));
        }
        return cache.emplace(n, std::make_pair(stride, std::move(logs))).first->second;
    };

    for (int m = min_m; m <= max_m; ++m) {
        for (int k = 1; k <= plan.K; ++k) {
            const int mu = moebius(static_cast<std::uint64_t>(k));
            if (mu == 0)
                continue;
            const int n = k * m;
            CompensatedSum over_chars;
            if (n == 1) {
                if (L1_moduli.size() != order)
                    throw std::invalid_argument("moebius_tail: L(1, chi) moduli missing or of wrong length");
                for (std::uint64_t j = 1; j < order; ++j) {
                    if (!(L1_moduli[j] > 0.0))
                        throw std::invalid_argument("moebius_tail: nonpositive |L(1, chi)|");
                    over_chars += std::log(L1_moduli[j]) + head_logs[j];
                }
            } else {
                const auto [stride, logs] = table_for(n);
                for (std::uint64_t j = 1; j < order; ++j) {
                    const std::uint64_t i = j * static_cast<std::uint64_t>(n) % order;
                    over_chars += logs[i / stride];
                }
            }
            tails[static_cast<std::size_t>(m)] += mu * over_chars.value() / k;
        }
        out.tail_m[static_cast<std::size_t>(m)] = tails[static_cast<std::size_t>(m)].value() / m;
    }
    return out;
}

PrimeField checked_field(std::uint64_t q, std::uint64_t cost_guard)
{
    require_prime_modulus(q);
    require_guard(q, cost_guard);
    return build_field(q);
}

double sum_tails(const Breakdown& b, int from)
{
    CompensatedSum acc;
    for (std::size_t m = static_cast<std::size_t>(from); m < b.tail_m.size(); ++m)
        acc += b.tail_m[m];
    return acc.value();
}

} // namespace

double moebius_tail(const PrimeField& field, const TruncationPlan& plan, std::span<const double> L1_moduli)
{
    const auto b = evaluate(field, plan, 1, plan.M, L1_moduli);
    return sum_tails(b, 1);
}

SigmaSplit verify_ratio(std::uint64_t q, std::uint64_t A, int delta, std::uint64_t cost_guard)
{
    const auto field = checked_field(q, cost_guard);
    const auto plan = choose_plan(q, A, delta);
    const auto L1 = naive_L1_moduli(field);
    const auto b = evaluate(field, plan, 1, plan.M, L1);
    SigmaSplit split;
    split.q = q;
    split.plan = plan;
    split.sigma1 = b.head_sigma1 + b.tail_m[1];
    split.sigma2 = (b.head_total - b.head_sigma1) + sum_tails(b, 2);
    split.log_R_check = split.sigma1 + split.sigma2;
    return split;
}

double sigma2(std::uint64_t q, std::uint64_t A, int delta, std::uint64_t cost_guard)
{
    const auto field = checked_field(q, cost_guard);
    const auto plan = choose_plan(q, A, delta);
    const auto b = evaluate(field, plan, 2, plan.M, {});
    return (b.head_total - b.head_sigma1) + sum_tails(b, 2);
}

SigmaSplit sigma1(std::uint64_t q, double log_R, std::uint64_t A, int delta, double err_est,
                  std::uint64_t cost_guard)
{
    const auto field = checked_field(q, cost_guard);
    const auto plan = choose_plan(q, A, delta);
    const auto L1 = naive_L1_moduli(field);
    // m = 1 only: the E1 tail is absent and only E2(q, P, 1, K) remains.
    const auto direct = evaluate(field, plan, 1, 1, L1);
    const double s1_direct = direct.head_sigma1 + direct.tail_m[1];
    const double s2 = sigma2(q, A, delta, cost_guard);
    const double s1_indirect = log_R - s2;
    const double tolerance = 2.0 * std::pow(10.0, -delta) + err_est;
    if (!(std::abs(s1_direct - s1_indirect) <= tolerance))
        throw VerificationFailure("Sigma_1 paths disagree for q=" + std::to_string(q) + ": direct " +
                                  std::to_string(s1_direct) + " vs log R - Sigma_2 " + std::to_string(s1_indirect));
    SigmaSplit split;
    split.q = q;
    split.plan = plan;
    split.sigma1 = s1_direct;
    split.sigma2 = s2;
    split.log_R_check = split.sigma1 + split.sigma2;
    return split;
}

double mertens_M_q1(const SigmaSplit& split)
{
    const double q = static_cast<double>(split.q);
    return (split.sigma1 + constants().meissel_mertens - 1.0 / q) / (q - 1.0);
}

MertensB mertens_B_q(std::uint64_t q)
{
    require_prime_modulus(q);
    MertensB out;
    out.series = -prime_power_sum(q);
    const double inv = 1.0 / static_cast<double>(q);
    out.closed_form = constants().meissel_mertens - kEulerGamma - (std::log1p(-inv) + inv);
    return out;
}

} // namespace bsr
