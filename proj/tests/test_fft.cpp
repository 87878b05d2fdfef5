#include "bsr/fft.hpp"
#include "bsr/ntheory.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace bsr;

namespace {

double max_abs(const ComplexSeq& x)
{
    double m = 0.0;
    for (auto v : x)
        m = std::max(m, std::abs(v));
    return m;
}

double max_diff(const ComplexSeq& a, const ComplexSeq& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Textbook DFT in long double, no shared code with the library.
ComplexSeq reference_dft(const ComplexSeq& x, int sign)
{
    const std::size_t n = x.size();
    ComplexSeq out(n);
    for (std::size_t j = 0; j < n; ++j) {
        long double re = 0, im = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const long double ang = sign * 2.0L * std::numbers::pi_v<long double> * static_cast<long double>((j * k) % n) /
                                    static_cast<long double>(n);
            re += x[k].real() * std::cos(ang) - x[k].imag() * std::sin(ang);
            im += x[k].real() * std::sin(ang) + x[k].imag() * std::cos(ang);
        }
        out[j] = {static_cast<double>(re), static_cast<double>(im)};
    }
    return out;
}

} // namespace

TEST_CASE("dft_naive small cases")
{
    CHECK(dft_naive(ComplexSeq{{2.5, -1.0}})[0] == cplx(2.5, -1.0));
    const auto d = dft_naive(ComplexSeq{1, 0, 0, 0});
    for (auto v : d)
        CHECK(std::abs(v - cplx(1, 0)) < 1e-15);
    const auto c = dft_naive(ComplexSeq{1, 1, 1, 1});
    CHECK(std::abs(c[0] - cplx(4, 0)) < 1e-15);
    for (int j = 1; j < 4; ++j)
        CHECK(std::abs(c[j]) < 1e-15);
    // Sign convention e(-jk/n).
    const auto x = oracle::random_sequence(17, 5);
    CHECK(max_diff(dft_naive(x), reference_dft(x, -1)) < 1e-13);
    CHECK(max_diff(dft_naive(x, Direction::Backward), reference_dft(x, +1)) < 1e-13);
}

TEST_CASE("dft_fast matches dft_naive for every n <= 512")
{
    double worst = 0.0;
    int worst_n = 0;
    for (int n = 1; n <= 512; ++n) {
        const auto x = oracle::random_sequence(static_cast<std::size_t>(n), 1000 + n);
        for (auto dir : {Direction::Forward, Direction::Backward}) {
            const auto ref = dft_naive(x, dir);
            const double rel = max_diff(dft_fast(x, dir), ref) / max_abs(ref);
            if (rel > worst) {
                worst = rel;
                worst_n = n;
            }
        }
    }
    INFO("worst n = " << worst_n);
    CHECK(worst <= 1e-10);
}

TEST_CASE("dft_fast error within c eps log2(n) ||x||_1")
{
    for (int n : {6, 100, 127, 255, 256, 510, 1000}) {
        const auto x = oracle::random_sequence(static_cast<std::size_t>(n), 77 + n);
        double l1 = 0.0;
        for (auto v : x)
            l1 += std::abs(v);
        const double err = max_diff(dft_fast(x), reference_dft(x, -1));
        CHECK(err <= 8.0 * std::numeric_limits<double>::epsilon() * std::log2(n + 1.0) * l1);
    }
}

TEST_CASE("delta input of length 6 transforms to all ones")
{
    ComplexSeq x(6, 0.0);
    x[0] = 1.0;
    for (auto v : dft_fast(x))
        CHECK(std::abs(v - cplx(1, 0)) < 1e-15);
}

TEST_CASE("linearity")
{
    for (int n : {7, 100, 331}) {
        const auto x = oracle::random_sequence(n, 1), y = oracle::random_sequence(n, 2);
        const cplx a(0.3, -1.2), b(-2.0, 0.5);
        ComplexSeq z(n);
        for (int i = 0; i < n; ++i)
            z[i] = a * x[i] + b * y[i];
        const auto X = dft_fast(x), Y = dft_fast(y), Z = dft_fast(z);
        ComplexSeq combo(n);
        for (int i = 0; i < n; ++i)
            combo[i] = a * X[i] + b * Y[i];
        CHECK(max_diff(Z, combo) / max_abs(Z) < 1e-10);
    }
}

TEST_CASE("Parseval and round trip for n <= 4096")
{
    for (int n : {1, 2, 3, 12, 97, 1000, 1024, 2047, 4095, 4096}) {
        const auto x = oracle::random_sequence(n, 9 * n);
        const auto X = dft_fast(x);
        double ex = 0.0, eX = 0.0;
        for (int i = 0; i < n; ++i) {
            ex += std::norm(x[i]);
            eX += std::norm(X[i]);
        }
        CHECK(eX == doctest::Approx(n * ex).epsilon(1e-10));
        const auto back = idft_fast(X);
        CHECK(max_diff(back, x) / max_abs(x) < 1e-10);
    }
}

TEST_CASE("DftPlan reuse and length check")
{
    const DftPlan plan(30);
    const auto x = oracle::random_sequence(30, 4);
    CHECK(plan.execute(x) == plan.execute(x));
    CHECK_THROWS((void)plan.execute(oracle::random_sequence(31, 4)));
    CHECK_THROWS((void)DftPlan(0));
}

TEST_CASE("char_spectrum examples")
{
    const auto f3 = build_field(3);
    const auto s3 = char_spectrum(f3, [](std::uint64_t a) { return a / 3.0; });
    CHECK(std::abs(s3.sums[1] - cplx(-1.0 / 3.0, 0.0)) < 1e-15);
    CHECK(std::abs(s3.sums[0] - cplx(1.0, 0.0)) < 1e-15);

    const auto f5 = build_field(5);
    const auto s5 = char_spectrum(f5, [](std::uint64_t) { return 1.0; });
    CHECK(std::abs(s5.sums[0] - cplx(4, 0)) < 1e-15);
    for (int j = 1; j < 4; ++j)
        CHECK(std::abs(s5.sums[j]) < 1e-15);

    for (std::uint64_t q : {7ull, 11ull, 101ull}) {
        const auto field = build_field(q);
        const auto table = oracle::character_table(q);
        auto f = [](std::uint64_t a) { return std::sin(static_cast<double>(a)) + 0.1 * a; };
        const auto spec = char_spectrum(field, f);
        REQUIRE(spec.sums.size() == q - 1);
        for (std::uint64_t j = 0; j < q - 1; ++j) {
            cplx direct = 0;
            for (std::uint64_t a = 1; a < q; ++a)
                direct += f(a) * table(j, a);
            CHECK(std::abs(spec.sums[j] - direct) < 1e-12 * q);
        }
    }
}

TEST_CASE("char_spectrum conjugate symmetry and parity, q <= 500")
{
    bool sym = true, parity = true;
    for (std::uint64_t q : sieve_primes(500)) {
        if (q == 2)
            continue;
        const auto field = build_field(q);
        auto f = [q](std::uint64_t a) { return std::log(static_cast<double>(a) + 0.5) / static_cast<double>(q); };
        const auto s = char_spectrum(field, f);
        for (std::uint64_t j = 1; j < q - 1; ++j)
            sym = sym && std::abs(s.sums[q - 1 - j] - std::conj(s.sums[j])) < 1e-12;
        if (q <= 100) {
            const auto r = char_spectrum(field, [&](std::uint64_t a) { return f(q - a); });
            for (std::uint64_t j = 0; j < q - 1; ++j) {
                const cplx expected = (j % 2 ? -1.0 : 1.0) * s.sums[j];
                parity = parity && std::abs(r.sums[j] - expected) < 1e-12;
            }
        }
    }
    CHECK(sym);
    CHECK(parity);
}

TEST_CASE("decimated spectrum equals the full one")
{
    for (std::uint64_t q : {3ull, 5ull, 7ull, 13ull, 97ull, 1009ull, 4099ull}) {
        const auto field = build_field(q);
        auto f = [q](std::uint64_t a) { return static_cast<double>(a * a % 17) / static_cast<double>(q); };
        const auto full = char_spectrum(field, f);
        const auto dec = char_spectrum_decimated(field, f, DftPlan((q - 1) / 2));
        double scale = 1.0;
        for (auto v : full.sums)
            scale = std::max(scale, std::abs(v));
        CHECK(max_diff(full.sums, dec.sums) / scale < 1e-12);
    }
}

TEST_CASE("parity_split")
{
    auto split_of = [](std::uint64_t q) { return parity_split(CharSpectrum{q, ComplexSeq(q - 1)}); };
    const auto s3 = split_of(3);
    CHECK(s3.odd == std::vector<std::size_t>{1});
    CHECK(s3.even_nonprincipal.empty());
    const auto s5 = split_of(5);
    CHECK(s5.odd == std::vector<std::size_t>{1, 3});
    CHECK(s5.even_nonprincipal == std::vector<std::size_t>{2});
    const auto s13 = split_of(13);
    CHECK(s13.odd.size() == 6);
    CHECK(s13.even_nonprincipal.size() == 5);
}
