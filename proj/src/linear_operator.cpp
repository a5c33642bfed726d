#include "bregpnp/linear_operator.hpp"

#include <cmath>
#include <random>
#include <string>

#include "bregpnp/errors.hpp"

namespace bregpnp {

namespace {

void require_fits(const Image& x, const Kernel& k) {
    if (k.rows() > x.height() || k.cols() > x.width()) {
        throw DimensionError("kernel " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                             " larger than image " + std::to_string(x.height()) + "x" +
                             std::to_string(x.width()));
    }
}

// sign = -1 gives convolution, +1 correlation.
Image circular_filter(const Image& x, const Kernel& k, long sign) {
    require_fits(x, k);
    const long h = static_cast<long>(x.height());
    const long w = static_cast<long>(x.width());
    const long cr = static_cast<long>(k.rows() / 2);
    const long cc = static_cast<long>(k.cols() / 2);
    Image out(x.width(), x.height(), 0.0);
    for (long i = 0; i < static_cast<long>(k.rows()); ++i) {
        const long dr = sign * (i - cr);
        for (long j = 0; j < static_cast<long>(k.cols()); ++j) {
            const double tap = k(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            if (tap == 0.0) continue;
            const long dc = sign * (j - cc);
            for (long r = 0; r < h; ++r) {
                const long sr = ((r + dr) % h + h) % h;
                const double* src = &x.values()[static_cast<std::size_t>(sr * w)];
                double* dst = &out.values()[static_cast<std::size_t>(r * w)];
                long sc = ((dc % w) + w) % w;
                for (long c = 0; c < w; ++c) {
                    dst[c] += tap * src[sc];
                    if (++sc == w) sc = 0;
                }
            }
        }
    }
    return out;
}

void require_shape(const Image& x, Shape shape, const char* what) {
    if (x.shape() != shape) {
        throw DimensionError(std::string(what) + ": expected " + std::to_string(shape.width) + "x" +
                             std::to_string(shape.height) + " image, got " +
                             std::to_string(x.width()) + "x" + std::to_string(x.height()));
    }
}

} // namespace

Image conv2d_forward(const Image& x, const Kernel& k) { return circular_filter(x, k, -1); }

Image conv2d_adjoint(const Image& u, const Kernel& k) { return circular_filter(u, k, +1); }

Image IdentityOperator::apply(const Image& x) const {
    require_shape(x, shape_, "identity operator");
    return x;
}

Image IdentityOperator::apply_adjoint(const Image& u) const {
    require_shape(u, shape_, "identity operator adjoint");
    return u;
}

ConvolutionOperator::ConvolutionOperator(Kernel kernel, Shape shape)
    : kernel_(std::move(kernel)), shape_(shape) {
    if (kernel_.rows() > shape.height || kernel_.cols() > shape.width) {
        throw DimensionError("kernel larger than image");
    }
}

Image ConvolutionOperator::apply(const Image& x) const {
    require_shape(x, shape_, "convolution");
    return conv2d_forward(x, kernel_);
}

Image ConvolutionOperator::apply_adjoint(const Image& u) const {
    require_shape(u, shape_, "convolution adjoint");
    return conv2d_adjoint(u, kernel_);
}

DenseOperator::DenseOperator(std::size_t rows, std::size_t cols, std::vector<double> entries,
                             Shape input_shape)
    : rows_(rows), cols_(cols), entries_(std::move(entries)),
      input_shape_(input_shape.size() == 0 ? Shape{cols, 1} : input_shape) {
    if (rows_ == 0 || cols_ == 0 || entries_.size() != rows_ * cols_) {
        throw DimensionError("dense operator entries do not match its dimensions");
    }
    if (input_shape_.size() != cols_) {
        throw DimensionError("dense operator input shape does not match column count");
    }
}

Image DenseOperator::apply(const Image& x) const {
    require_shape(x, input_shape_, "dense operator");
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) acc += entries_[i * cols_ + j] * x[j];
        out[i] = acc;
    }
    return Image::from_vector(std::move(out));
}

Image DenseOperator::apply_adjoint(const Image& u) const {
    require_shape(u, output_shape(), "dense operator adjoint");
    std::vector<double> out(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out[j] += entries_[i * cols_ + j] * u[i];
    }
    return Image(input_shape_, std::move(out));
}

double spectral_norm_squared(const LinearOperator& op, int max_iters, double rel_tol,
                             unsigned long long seed) {
    const Shape shape = op.input_shape();
    std::mt19937_64 rng(seed);
    std::vector<double> start(shape.size());
    for (double& v : start) v = 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
    Image v(shape, std::move(start));
    v = (1.0 / norm2(v)) * v;

    double estimate = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        Image w = op.apply_adjoint(op.apply(v));
        const double next = dot(v, w);
        const double wn = norm2(w);
        if (wn == 0.0) return 0.0;
        v = (1.0 / wn) * w;
        const bool done = it > 0 && std::abs(next - estimate) <= rel_tol * std::abs(next);
        estimate = next;
        if (done) break;
    }
    return estimate;
}

} // namespace bregpnp
