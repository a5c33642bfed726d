#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "bregpnp/image.hpp"
#include "bregpnp/kernel.hpp"

namespace bregpnp {

/// Circular (periodic boundary) 2D convolution of x with k. Output shape equals input shape.
Image conv2d_forward(const Image& x, const Kernel& k);

/// Adjoint of conv2d_forward: circular correlation with k.
Image conv2d_adjoint(const Image& u, const Kernel& k);

/// Forward/adjoint pair of a linear measurement operator.
class LinearOperator {
public:
    virtual ~LinearOperator() = default;

    virtual Image apply(const Image& x) const = 0;
    virtual Image apply_adjoint(const Image& u) const = 0;
    virtual Shape input_shape() const = 0;
    virtual Shape output_shape() const = 0;
};

class IdentityOperator final : public LinearOperator {
public:
    explicit IdentityOperator(Shape shape) : shape_(shape) {}

    Image apply(const Image& x) const override;
    Image apply_adjoint(const Image& u) const override;
    Shape input_shape() const override { return shape_; }
    Shape output_shape() const override { return shape_; }

private:
    Shape shape_;
};

class ConvolutionOperator final : public LinearOperator {
public:
    ConvolutionOperator(Kernel kernel, Shape shape);

    Image apply(const Image& x) const override;
    Image apply_adjoint(const Image& u) const override;
    Shape input_shape() const override { return shape_; }
    Shape output_shape() const override { return shape_; }
    const Kernel& kernel() const { return kernel_; }

private:
    Kernel kernel_;
    Shape shape_;
};

/// Dense row-major m x n matrix acting on flattened images; for small test problems.
/// Inputs must have `cols` entries and are reshaped freely; outputs are m x 1.
class DenseOperator final : public LinearOperator {
public:
    DenseOperator(std::size_t rows, std::size_t cols, std::vector<double> entries,
                  Shape input_shape = {});

    Image apply(const Image& x) const override;
    Image apply_adjoint(const Image& u) const override;
    Shape input_shape() const override { return input_shape_; }
    Shape output_shape() const override { return {rows_, 1}; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> entries_;
    Shape input_shape_;
};

/// Estimates the largest eigenvalue of A^T A (= ||A||_2^2) by power iteration from a
/// deterministic seeded start vector. Stops after `max_iters` or when the Rayleigh
/// quotient changes by less than `rel_tol` relative.
double spectral_norm_squared(const LinearOperator& op, int max_iters = 50, double rel_tol = 1e-8,
                             unsigned long long seed = 0x5eed);

} // namespace bregpnp
