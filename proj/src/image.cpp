#include "bregpnp/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bregpnp/errors.hpp"

namespace bregpnp {

Image::Image(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height), data_(width * height, fill) {
    if (width == 0 || height == 0) {
        throw DimensionError("image dimensions must be positive");
    }
}

Image::Image(Shape shape, std::vector<double> data)
    : width_(shape.width), height_(shape.height), data_(std::move(data)) {
    if (width_ == 0 || height_ == 0) {
        throw DimensionError("image dimensions must be positive");
    }
    if (data_.size() != width_ * height_) {
        throw DimensionError("image data length " + std::to_string(data_.size()) +
                             " does not match " + std::to_string(width_) + "x" +
                             std::to_string(height_));
    }
}

Image Image::from_vector(std::vector<double> data) {
    const std::size_t n = data.size();
    return Image(Shape{n, 1}, std::move(data));
}

bool Image::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

bool Image::all_positive() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return v > 0.0; });
}

bool Image::all_nonnegative() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return v >= 0.0; });
}

void require_same_shape(const Image& a, const Image& b, const char* what) {
    if (a.shape() != b.shape()) {
        throw DimensionError(std::string(what) + ": shape mismatch " +
                             std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                             " vs " + std::to_string(b.width()) + "x" +
                             std::to_string(b.height()));
    }
}

double dot(const Image& a, const Image& b) {
    require_same_shape(a, b, "dot");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm2(const Image& a) {
    double acc = 0.0;
    for (double v : a.values()) acc += v * v;
    return std::sqrt(acc);
}

double norm1(const Image& a) {
    double acc = 0.0;
    for (double v : a.values()) acc += std::abs(v);
    return acc;
}

double sum(const Image& a) {
    double acc = 0.0;
    for (double v : a.values()) acc += v;
    return acc;
}

double max_abs_diff(const Image& a, const Image& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Image operator+(const Image& a, const Image& b) { return axpy(a, 1.0, b); }

Image operator-(const Image& a, const Image& b) { return axpy(a, -1.0, b); }

Image operator*(double s, const Image& a) {
    Image out = a;
    for (double& v : out.values()) v *= s;
    return out;
}

Image axpy(const Image& a, double s, const Image& b) {
    require_same_shape(a, b, "axpy");
    Image out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * b[i];
    return out;
}

} // namespace bregpnp
