#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bregpnp {

/// Odd-sized 2D convolution kernel, row-major.
class Kernel {
public:
    Kernel(std::size_t rows, std::size_t cols, std::vector<double> taps);

    /// Same taps scaled to sum 1. Throws ConfigError when the sum is not positive.
    static Kernel normalized(std::size_t rows, std::size_t cols, std::vector<double> taps);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t r, std::size_t c) const { return taps_[r * cols_ + c]; }
    const std::vector<double>& taps() const { return taps_; }

    double tap_sum() const;
    bool is_normalized(double tol = 1e-12) const;
    /// True when the kernel equals its 180 degree rotation (self-adjoint convolution).
    bool is_symmetric(double tol = 1e-15) const;
    Kernel flipped() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> taps_;
};

Kernel identity_kernel();
/// 9x9 box blur, every tap 1/81.
Kernel uniform9();
/// size x size box blur.
Kernel uniform_kernel(std::size_t size);
/// 9x9 sampled isotropic Gaussian renormalized to sum 1.
Kernel gaussian9(double sigma);
Kernel gaussian_kernel(std::size_t size, double sigma);

/// Parses "uniform9", "gauss9=SIGMA" or "file:PATH" (whitespace separated rows,
/// normalized on load).
Kernel parse_kernel_spec(const std::string& spec);

} // namespace bregpnp
