#include "sqw/fft.hpp"

#include "sqw/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqw {

using cd = std::complex<double>;

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) noexcept {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

namespace {

class Radix2 {
public:
    explicit Radix2(std::size_t n) : n_(n), rev_(n), tw_(n / 2) {
        unsigned bits = 0;
        while ((std::size_t{1} << bits) < n) ++bits;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (unsigned b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
            rev_[i] = r;
        }
        for (std::size_t k = 0; k < n / 2; ++k) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            tw_[k] = {std::cos(ang), std::sin(ang)};
        }
    }

    // Unscaled; sign -1 forward, +1 backward.
    void run(cd* a, int sign) const {
        for (std::size_t i = 0; i < n_; ++i)
            if (i < rev_[i]) std::swap(a[i], a[rev_[i]]);
        auto* d = reinterpret_cast<double*>(a);
        const double s = sign > 0 ? -1.0 : 1.0;
        for (std::size_t len = 2; len <= n_; len <<= 1) {
            const std::size_t half = len / 2;
            const std::size_t stride = n_ / len;
            for (std::size_t k = 0; k < half; ++k) {
                const double wr = tw_[k * stride].real();
                const double wi = s * tw_[k * stride].imag();
                for (std::size_t b = k; b < n_; b += len) {
                    double* u = d + 2 * b;
                    double* v = d + 2 * (b + half);
                    const double tr = wr * v[0] - wi * v[1];
                    const double ti = wr * v[1] + wi * v[0];
                    v[0] = u[0] - tr;
                    v[1] = u[1] - ti;
                    u[0] += tr;
                    u[1] += ti;
                }
            }
        }
    }

    std::size_t size() const noexcept { return n_; }

private:
    std::size_t n_;
    std::vector<std::size_t> rev_;
    std::vector<cd> tw_;
};

class Bluestein {
public:
    explicit Bluestein(std::size_t n) : n_(n), m_(next_power_of_two(2 * n - 1)), inner_(m_), chirp_(n), kernel_(m_) {
        for (std::size_t j = 0; j < n; ++j) {
            // j^2 mod 2n keeps the angle argument small.
            const std::size_t j2 = (j * j) % (2 * n);
            const double ang = -std::numbers::pi * static_cast<double>(j2) / static_cast<double>(n);
            chirp_[j] = {std::cos(ang), std::sin(ang)};
        }
        kernel_[0] = std::conj(chirp_[0]);
        for (std::size_t j = 1; j < n; ++j) kernel_[j] = kernel_[m_ - j] = std::conj(chirp_[j]);
        inner_.run(kernel_.data(), -1);
    }

    void run(cd* a, int sign) const {
        std::vector<cd> buf(m_, cd{0.0, 0.0});
        for (std::size_t j = 0; j < n_; ++j) {
            const cd c = sign < 0 ? chirp_[j] : std::conj(chirp_[j]);
            buf[j] = a[j] * c;
        }
        inner_.run(buf.data(), -1);
        for (std::size_t k = 0; k < m_; ++k) buf[k] *= sign < 0 ? kernel_[k] : std::conj(kernel_[(m_ - k) % m_]);
        inner_.run(buf.data(), +1);
        const double inv_m = 1.0 / static_cast<double>(m_);
        for (std::size_t k = 0; k < n_; ++k) {
            const cd c = sign < 0 ? chirp_[k] : std::conj(chirp_[k]);
            a[k] = buf[k] * c * inv_m;
        }
    }

private:
    std::size_t n_;
    std::size_t m_;
    Radix2 inner_;
    std::vector<cd> chirp_;
    std::vector<cd> kernel_;
};

} // namespace

struct Fft1D::Impl {
    std::size_t n;
    std::unique_ptr<Radix2> radix;
    std::unique_ptr<Bluestein> blue;

    void run(cd* a, int sign) const {
        if (n == 1) return;
        if (radix) radix->run(a, sign);
        else blue->run(a, sign);
    }
};

Fft1D::Fft1D(std::size_t n) : impl_(std::make_unique<Impl>()) {
    if (n == 0) throw std::invalid_argument("Fft1D: length must be positive");
    impl_->n = n;
    if (is_power_of_two(n)) impl_->radix = std::make_unique<Radix2>(n);
    else impl_->blue = std::make_unique<Bluestein>(n);
}

Fft1D::~Fft1D() = default;
Fft1D::Fft1D(Fft1D&&) noexcept = default;
Fft1D& Fft1D::operator=(Fft1D&&) noexcept = default;

std::size_t Fft1D::size() const noexcept { return impl_->n; }

void Fft1D::forward(std::span<cd> data) const {
    if (data.size() != impl_->n) throw std::invalid_argument("Fft1D: data length mismatch");
    impl_->run(data.data(), -1);
}

void Fft1D::inverse(std::span<cd> data) const {
    if (data.size() != impl_->n) throw std::invalid_argument("Fft1D: data length mismatch");
    impl_->run(data.data(), +1);
    const double s = 1.0 / static_cast<double>(impl_->n);
    for (auto& v : data) v *= s;
}

struct Fft2D::Impl {
    std::size_t nx, ny;
    Fft1D fx, fy;

    void run(std::span<cd> data, bool fwd, unsigned threads) const {
        if (data.size() != nx * ny) throw std::invalid_argument("Fft2D: data size mismatch");
        parallel_for(nx, threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                auto row = data.subspan(i * ny, ny);
                fwd ? fy.forward(row) : fy.inverse(row);
            }
        });
        constexpr std::size_t block = 8;
        const std::size_t nblocks = (ny + block - 1) / block;
        parallel_for(nblocks, threads, [&](std::size_t b, std::size_t e) {
            std::vector<cd> cols(block * nx);
            for (std::size_t blk = b; blk < e; ++blk) {
                const std::size_t j0 = blk * block;
                const std::size_t w = std::min(block, ny - j0);
                for (std::size_t i = 0; i < nx; ++i)
                    for (std::size_t c = 0; c < w; ++c) cols[c * nx + i] = data[i * ny + j0 + c];
                for (std::size_t c = 0; c < w; ++c) {
                    std::span<cd> col(cols.data() + c * nx, nx);
                    fwd ? fx.forward(col) : fx.inverse(col);
                }
                for (std::size_t i = 0; i < nx; ++i)
                    for (std::size_t c = 0; c < w; ++c) data[i * ny + j0 + c] = cols[c * nx + i];
            }
        });
    }
};

Fft2D::Fft2D(std::size_t nx, std::size_t ny) : impl_(std::make_unique<Impl>(Impl{nx, ny, Fft1D(nx), Fft1D(ny)})) {}
Fft2D::~Fft2D() = default;
Fft2D::Fft2D(Fft2D&&) noexcept = default;
Fft2D& Fft2D::operator=(Fft2D&&) noexcept = default;

std::size_t Fft2D::nx() const noexcept { return impl_->nx; }
std::size_t Fft2D::ny() const noexcept { return impl_->ny; }

void Fft2D::forward(std::span<cd> data, unsigned threads) const { impl_->run(data, true, threads); }
void Fft2D::inverse(std::span<cd> data, unsigned threads) const { impl_->run(data, false, threads); }

std::vector<double> fft_wavenumbers(std::size_t n, double d) {
    if (n == 0 || !(d > 0.0)) throw std::invalid_argument("fft_wavenumbers: need n > 0 and d > 0");
    std::vector<double> k(n);
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto s = static_cast<long long>(i);
        const auto nn = static_cast<long long>(n);
        k[i] = static_cast<double>(i < (n + 1) / 2 ? s : s - nn) * dk;
    }
    return k;
}

} // namespace sqw
