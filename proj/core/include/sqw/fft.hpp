#pragma once

// Complex FFTs: iterative radix-2 for power-of-two lengths, Bluestein's
// chirp-z algorithm for everything else. Unnormalized forward transform,
// inverse scaled by 1/n, so inverse(forward(x)) == x.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace sqw {

class Fft1D {
public:
    explicit Fft1D(std::size_t n);
    ~Fft1D();
    Fft1D(Fft1D&&) noexcept;
    Fft1D& operator=(Fft1D&&) noexcept;

    std::size_t size() const noexcept;

    /// In place, X_k = sum_j x_j exp(-2 pi i jk/n).
    void forward(std::span<std::complex<double>> data) const;
    /// In place, x_j = (1/n) sum_k X_k exp(+2 pi i jk/n).
    void inverse(std::span<std::complex<double>> data) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// 2D transform of an nx-by-ny row-major array (x slow, y fast), done as
/// 1D transforms along y then along x. Rows/columns may be spread over
/// `threads` workers; results do not depend on the thread count.
class Fft2D {
public:
    Fft2D(std::size_t nx, std::size_t ny);
    ~Fft2D();
    Fft2D(Fft2D&&) noexcept;
    Fft2D& operator=(Fft2D&&) noexcept;

    std::size_t nx() const noexcept;
    std::size_t ny() const noexcept;

    void forward(std::span<std::complex<double>> data, unsigned threads = 1) const;
    void inverse(std::span<std::complex<double>> data, unsigned threads = 1) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Angular wavenumbers of an n-point DFT with spacing d, in FFT order
/// (0, 1, ..., n/2-1, -n/2, ..., -1) * 2 pi / (n d).
std::vector<double> fft_wavenumbers(std::size_t n, double d);

bool is_power_of_two(std::size_t n) noexcept;
std::size_t next_power_of_two(std::size_t n) noexcept;

} // namespace sqw
