#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bregpnp {

struct Shape {
    std::size_t width = 0;
    std::size_t height = 0;

    std::size_t size() const { return width * height; }
    bool operator==(const Shape&) const = default;
};

/// Row-major grayscale image of 64-bit intensities.
///
/// Also used as the flat vector type of the solvers: a length-n vector is an
/// image of shape n x 1.
class Image {
public:
    Image() = default;
    Image(std::size_t width, std::size_t height, double fill = 0.0);
    Image(Shape shape, std::vector<double> data);

    static Image from_vector(std::vector<double> data);

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    Shape shape() const { return {width_, height_}; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t row, std::size_t col) { return data_[row * width_ + col]; }
    double operator()(std::size_t row, std::size_t col) const { return data_[row * width_ + col]; }
    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    std::span<double> values() { return data_; }
    std::span<const double> values() const { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool all_finite() const;
    bool all_positive() const;
    bool all_nonnegative() const;

    bool operator==(const Image&) const = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<double> data_;
};

/// Throws DimensionError naming `what` when the two shapes differ.
void require_same_shape(const Image& a, const Image& b, const char* what);

// Vector arithmetic used throughout the solvers. All of them require equal shapes.
double dot(const Image& a, const Image& b);
double norm2(const Image& a);
double norm1(const Image& a);
double sum(const Image& a);
double max_abs_diff(const Image& a, const Image& b);

Image operator+(const Image& a, const Image& b);
Image operator-(const Image& a, const Image& b);
Image operator*(double s, const Image& a);

/// a + s * b
Image axpy(const Image& a, double s, const Image& b);

} // namespace bregpnp
