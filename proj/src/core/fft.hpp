#pragma once

#include <complex>
#include <span>
#include <vector>

namespace cvpoly::detail {

using cplx = std::complex<double>;

/// In-place unnormalized DFT backed by FFTW. `sign` is -1 (forward,
/// e^{-2 pi i jk/n}) or +1. Plans are cached per (size, sign) and created
/// under a lock; execution is reentrant.
void fft_inplace(std::span<cplx> data, int sign);

/// Angular frequencies 2*pi*fftfreq(n, dq) in FFTW output order. The Nyquist
/// bin (even n) is reported as zero so that odd operators stay real-symmetric.
std::vector<double> angular_frequencies(std::size_t n, double dq);

/// Evaluates out[k] = sum_j x[j] * exp(i * (w0 + k*dw) * (t0 + j*dt)) for
/// k < n_out with Bluestein's chirp convolution, O((n_in + n_out) log).
/// Used wherever a continuous Fourier integral must be sampled on an
/// arbitrary uniform output axis rather than the FFT's native one.
class ChirpTransform {
   public:
    ChirpTransform(std::size_t n_in, double t0, double dt, std::size_t n_out, double w0, double dw);

    std::vector<cplx> apply(std::span<const cplx> x) const;

    std::size_t input_size() const {
        return n_in_;
    }
    std::size_t output_size() const {
        return n_out_;
    }

   private:
    std::size_t n_in_;
    std::size_t n_out_;
    std::size_t fft_size_;
    std::vector<cplx> pre_;      // per-input chirp
    std::vector<cplx> post_;     // per-output chirp
    std::vector<cplx> kernel_;   // FFT of the convolution kernel
};

}  // namespace cvpoly::detail
