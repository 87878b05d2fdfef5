#pragma once

#include "bsr/ntheory.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace bsr {

using cplx = std::complex<double>;
using ComplexSeq = std::vector<cplx>;

/// Sign of the exponent. Forward computes X[j] = sum_k x[k] e(-jk/n),
/// backward uses e(+jk/n). Neither direction normalizes.
enum class Direction { Forward, Backward };

/// Quadratic-time reference transform with compensated accumulation.
[[nodiscard]] ComplexSeq dft_naive(std::span<const cplx> x, Direction dir = Direction::Forward);

/// Precomputed O(n log n) transform of one fixed length n >= 1.
///
/// Powers of two run an iterative radix-2 kernel directly. Every other
/// length goes through Bluestein's chirp-z identity
///   jk = (j^2 + k^2 - (j-k)^2) / 2
/// as a circular convolution of power-of-two size >= 2n - 1. Twiddles and
/// chirps are evaluated by direct sin/cos calls; chirp phases reduce k^2
/// modulo 2n in integer arithmetic so no phase error accumulates with n.
///
/// A plan is immutable after construction; execute() may be called from
/// several threads at once (each call owns its scratch buffers).
class DftPlan {
public:
    explicit DftPlan(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    [[nodiscard]] ComplexSeq execute(std::span<const cplx> x, Direction dir = Direction::Forward) const;

private:
    void radix2(std::vector<cplx>& a, Direction dir) const;

    std::size_t n_ = 0;
    std::size_t m_ = 0;              // power-of-two working length
    std::vector<cplx> twiddle_;      // e(-i/m), i < m/2
    std::vector<std::uint32_t> bitrev_;
    std::vector<cplx> chirp_;        // e(-k^2 / 2n), k < n (Bluestein only)
    std::vector<cplx> filter_hat_;   // transformed conj chirp kernel (Bluestein only)
};

/// Convenience wrapper: builds a plan and runs it once.
[[nodiscard]] ComplexSeq dft_fast(std::span<const cplx> x, Direction dir = Direction::Forward);

/// Normalized inverse of dft_fast (forward).
[[nodiscard]] ComplexSeq idft_fast(std::span<const cplx> x);

/// All Dirichlet character sums of a real function on (Z/qZ)^*.
///
/// sums[j] = sum_{a=1}^{q-1} f(a) chi_j(a), with chi_j(g^k) = e(jk/(q-1)).
/// chi_j is odd exactly when j is odd, since chi_j(-1) = (-1)^j.
struct CharSpectrum {
    std::uint64_t q = 0;
    ComplexSeq sums;
};

/// Values of f indexed by residue: values[a - 1] = f(a), a = 1..q-1.
using ResidueFunction = std::function<double(std::uint64_t)>;

/// Full-length transform of k -> f(g^k), then read out in the character
/// convention above.
[[nodiscard]] CharSpectrum char_spectrum(const PrimeField& field, const ResidueFunction& f);

/// Same as char_spectrum(field, f) but reuses a plan of length q - 1.
[[nodiscard]] CharSpectrum char_spectrum(const PrimeField& field, const ResidueFunction& f, const DftPlan& plan);

/// Decimation in frequency: odd-index sums come from a length (q-1)/2
/// transform of (x[k] - x[k + n/2]) e(k/n), even-index sums from one of
/// x[k] + x[k + n/2]. `half_plan` must have length (q-1)/2. Produces the
/// same spectrum as char_spectrum up to rounding.
[[nodiscard]] CharSpectrum char_spectrum_decimated(const PrimeField& field, const ResidueFunction& f,
                                                   const DftPlan& half_plan);

struct ParitySplit {
    std::vector<std::size_t> odd;             ///< j odd, (q-1)/2 entries
    std::vector<std::size_t> even_nonprincipal; ///< j even and j != 0, (q-3)/2 entries
};

[[nodiscard]] ParitySplit parity_split(const CharSpectrum& spectrum);

} // namespace bsr
