#include "bregpnp/kernel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "bregpnp/errors.hpp"

namespace bregpnp {

Kernel::Kernel(std::size_t rows, std::size_t cols, std::vector<double> taps)
    : rows_(rows), cols_(cols), taps_(std::move(taps)) {
    if (rows_ % 2 == 0 || cols_ % 2 == 0) {
        throw DimensionError("kernel dimensions must be odd, got " + std::to_string(rows_) + "x" +
                             std::to_string(cols_));
    }
    if (taps_.size() != rows_ * cols_) {
        throw DimensionError("kernel tap count does not match its dimensions");
    }
    for (double t : taps_) {
        if (!std::isfinite(t)) throw ConfigError("kernel taps must be finite");
    }
}

Kernel Kernel::normalized(std::size_t rows, std::size_t cols, std::vector<double> taps) {
    double total = 0.0;
    for (double t : taps) total += t;
    if (!(total > 0.0)) throw ConfigError("kernel taps must have a positive sum");
    for (double& t : taps) t /= total;
    return Kernel(rows, cols, std::move(taps));
}

double Kernel::tap_sum() const {
    double total = 0.0;
    for (double t : taps_) total += t;
    return total;
}

bool Kernel::is_normalized(double tol) const { return std::abs(tap_sum() - 1.0) <= tol; }

bool Kernel::is_symmetric(double tol) const {
    const std::size_t n = taps_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(taps_[i] - taps_[n - 1 - i]) > tol) return false;
    }
    return true;
}

Kernel Kernel::flipped() const {
    return Kernel(rows_, cols_, std::vector<double>(taps_.rbegin(), taps_.rend()));
}

Kernel identity_kernel() { return Kernel(1, 1, {1.0}); }

Kernel uniform_kernel(std::size_t size) {
    if (size == 0) throw DimensionError("kernel size must be positive");
    const double tap = 1.0 / static_cast<double>(size * size);
    return Kernel(size, size, std::vector<double>(size * size, tap));
}

Kernel uniform9() { return uniform_kernel(9); }

Kernel gaussian_kernel(std::size_t size, double sigma) {
    if (!(sigma > 0.0)) throw ConfigError("gaussian kernel needs sigma > 0");
    const double center = static_cast<double>(size / 2);
    std::vector<double> taps(size * size);
    for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) {
            const double dr = static_cast<double>(r) - center;
            const double dc = static_cast<double>(c) - center;
            taps[r * size + c] = std::exp(-(dr * dr + dc * dc) / (2.0 * sigma * sigma));
        }
    }
    return Kernel::normalized(size, size, std::move(taps));
}

Kernel gaussian9(double sigma) { return gaussian_kernel(9, sigma); }

namespace {

Kernel load_kernel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open kernel file " + path);
    std::vector<double> taps;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<double> row;
        double v = 0.0;
        while (ls >> v) row.push_back(v);
        if (row.empty()) continue;
        if (cols == 0) cols = row.size();
        if (row.size() != cols) throw IoError("ragged kernel file " + path);
        taps.insert(taps.end(), row.begin(), row.end());
        ++rows;
    }
    if (rows == 0) throw IoError("empty kernel file " + path);
    return Kernel::normalized(rows, cols, std::move(taps));
}

} // namespace

Kernel parse_kernel_spec(const std::string& spec) {
    if (spec == "uniform9") return uniform9();
    if (spec == "identity") return identity_kernel();
    if (spec.rfind("gauss9=", 0) == 0) {
        const std::string value = spec.substr(7);
        std::size_t used = 0;
        double sigma = 0.0;
        try {
            sigma = std::stod(value, &used);
        } catch (const std::exception&) {
            throw ConfigError("bad gaussian sigma in kernel spec '" + spec + "'");
        }
        if (used != value.size()) throw ConfigError("bad gaussian sigma in kernel spec '" + spec + "'");
        return gaussian9(sigma);
    }
    if (spec.rfind("file:", 0) == 0) return load_kernel_file(spec.substr(5));
    throw ConfigError("unknown kernel spec '" + spec + "' (expected uniform9, gauss9=SIGMA or file:PATH)");
}

} // namespace bregpnp
