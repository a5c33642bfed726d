#include "bregpnp/denoiser.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "bregpnp/errors.hpp"
#include "bregpnp/linear_operator.hpp"

namespace bregpnp {

Image Denoiser::apply_linear(const Image& x) const {
    return apply(x) - apply(Image(x.width(), x.height(), 0.0));
}

LinearSmoother::LinearSmoother(double alpha, Kernel kernel) : alpha_(alpha), kernel_(std::move(kernel)) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("smoother alpha must lie in [0, 1]");
}

Image LinearSmoother::apply(const Image& x) const {
    Image out = conv2d_forward(x, kernel_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - alpha_) * x[i] + alpha_ * out[i];
    return out;
}

Image LinearSmoother::apply_linear_adjoint(const Image& u) const {
    Image out = conv2d_adjoint(u, kernel_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - alpha_) * u[i] + alpha_ * out[i];
    return out;
}

std::string LinearSmoother::name() const { return "smooth:" + std::to_string(alpha_); }

std::optional<double> LinearSmoother::declared_lipschitz() const {
    const auto& taps = kernel_.taps();
    const bool nonneg = std::all_of(taps.begin(), taps.end(), [](double t) { return t >= 0.0; });
    if (nonneg && kernel_.is_normalized()) return 1.0;
    return std::nullopt;
}

ScaledContraction::ScaledContraction(double rho, Image anchor) : rho_(rho), anchor_(std::move(anchor)) {
    if (!(rho >= 0.0 && rho < 1.0)) throw ConfigError("contraction factor rho must lie in [0, 1)");
}

Image ScaledContraction::apply(const Image& x) const {
    if (anchor_.empty()) return rho_ * x;
    require_same_shape(x, anchor_, "scaled contraction");
    Image out = x;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = anchor_[i] + rho_ * (x[i] - anchor_[i]);
    return out;
}

std::string ScaledContraction::name() const { return "contract:" + std::to_string(rho_); }

MedianFilter::MedianFilter(std::size_t window) : window_(window) {
    if (window == 0 || window % 2 == 0) throw ConfigError("median window must be odd and positive");
}

Image MedianFilter::apply(const Image& x) const {
    if (window_ > x.width() || window_ > x.height()) throw DimensionError("median window larger than image");
    const long h = static_cast<long>(x.height());
    const long w = static_cast<long>(x.width());
    const long half = static_cast<long>(window_ / 2);
    Image out(x.width(), x.height());
    std::vector<double> buf(window_ * window_);
    for (long r = 0; r < h; ++r) {
        for (long c = 0; c < w; ++c) {
            std::size_t n = 0;
            for (long dr = -half; dr <= half; ++dr) {
                const long rr = ((r + dr) % h + h) % h;
                for (long dc = -half; dc <= half; ++dc) {
                    const long cc = ((c + dc) % w + w) % w;
                    buf[n++] = x(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc));
                }
            }
            auto mid = buf.begin() + static_cast<long>(buf.size() / 2);
            std::nth_element(buf.begin(), mid, buf.end());
            out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = *mid;
        }
    }
    return out;
}

std::string MedianFilter::name() const { return "median:" + std::to_string(window_); }

namespace {

double parse_number(const std::string& text, const std::string& spec) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw ConfigError("bad number in denoiser spec '" + spec + "'");
    return v;
}

} // namespace

std::shared_ptr<const Denoiser> parse_denoiser_spec(const std::string& spec) {
    if (spec == "identity") return std::make_shared<IdentityDenoiser>();
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "smooth") return std::make_shared<LinearSmoother>(parse_number(arg, spec), uniform_kernel(3));
    if (head == "contract") return std::make_shared<ScaledContraction>(parse_number(arg, spec));
    if (head == "median") {
        const double w = parse_number(arg, spec);
        if (w < 1 || w != std::floor(w)) throw ConfigError("median window must be a positive odd integer");
        return std::make_shared<MedianFilter>(static_cast<std::size_t>(w));
    }
    throw ConfigError("unknown denoiser '" + spec + "' (expected identity, smooth:A, contract:R or median:W)");
}

LipschitzEstimate lipschitz_estimate(const Denoiser& d, Shape probe_shape, int trials,
                                     unsigned long long seed) {
    if (trials < 1) throw ConfigError("lipschitz_estimate needs at least one trial");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto random_image = [&] {
        std::vector<double> v(probe_shape.size());
        for (double& e : v) e = normal(rng);
        return Image(probe_shape, std::move(v));
    };

    if (d.is_affine()) {
        // Positive start vector: the DC mode carries the norm of normalized smoothers.
        Image v = random_image();
        for (double& e : v.values()) e = 1.0 + 0.1 * e;
        v = (1.0 / norm2(v)) * v;
        double estimate = 0.0;
        const int max_iters = std::max(trials, 2000);
        for (int it = 0; it < max_iters; ++it) {
            Image w = d.apply_linear_adjoint(d.apply_linear(v));
            const double next = dot(v, w);
            const double wn = norm2(w);
            if (wn == 0.0) return {0.0, false};
            v = (1.0 / wn) * w;
            const bool done = it > 0 && std::abs(next - estimate) <= 1e-14 * std::abs(next);
            estimate = next;
            if (done) break;
        }
        return {std::sqrt(std::max(estimate, 0.0)), false};
    }

    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Image a = random_image();
        const Image b = random_image();
        const double den = norm2(a - b);
        if (den == 0.0) continue;
        best = std::max(best, norm2(d.apply(a) - d.apply(b)) / den);
    }
    return {best, true};
}

} // namespace bregpnp
