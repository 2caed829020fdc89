#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace clf::detail {

/// In-place unnormalized DCT-I (FFTW REDFT00) of `data` (size >= 2):
///   Y_j = X_0 + (-1)^j X_{n-1} + 2 sum_{m=1}^{n-2} X_m cos(pi m j / (n-1)).
void dct1(std::span<double> data);

/// Real <-> half-complex FFT of a fixed length, unnormalized in both directions.
/// Not copyable; one instance per thread.
class RealFft {
public:
    explicit RealFft(std::size_t n);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    std::size_t size() const noexcept { return n_; }
    std::size_t spectrum_size() const noexcept { return n_ / 2 + 1; }

    /// Real buffer of length size(); forward() reads it, inverse() writes it.
    std::span<double> real() noexcept;
    /// Spectrum buffer of length spectrum_size().
    std::span<std::complex<double>> spectrum() noexcept;

    void forward();
    void inverse();

private:
    struct Impl;
    std::size_t n_;
    std::unique_ptr<Impl> impl_;
};

}  // namespace clf::detail
