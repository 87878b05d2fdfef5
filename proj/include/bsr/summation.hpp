#pragma once

#include <cmath>
#include <complex>

namespace bsr {

/// Neumaier's variant of Kahan summation. Keeps the rounding error of a
/// long accumulation at O(eps) independent of the number of terms.
class CompensatedSum {
public:
    constexpr CompensatedSum() = default;
    explicit constexpr CompensatedSum(double init) : sum_(init) {}

    CompensatedSum& operator+=(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }

    CompensatedSum& operator-=(double x) noexcept { return *this += -x; }

    [[nodiscard]] constexpr double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Compensated accumulation of complex values, one channel per component.
class CompensatedComplexSum {
public:
    CompensatedComplexSum& operator+=(std::complex<double> z) noexcept
    {
        re_ += z.real();
        im_ += z.imag();
        return *this;
    }

    [[nodiscard]] std::complex<double> value() const noexcept
    {
        return {re_.value(), im_.value()};
    }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

} // namespace bsr
