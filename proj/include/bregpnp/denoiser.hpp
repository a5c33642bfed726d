#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

#include "bregpnp/image.hpp"
#include "bregpnp/kernel.hpp"

namespace bregpnp {

/// Artifact-removal operator D plugged into PnP/RED iterations.
///
/// Implementations must be deterministic and stateless. Affine denoisers
/// (D(x) = Lx + c) report so through is_affine() and expose the linear part
/// and its adjoint, which makes their Lipschitz constant computable exactly.
class Denoiser {
public:
    virtual ~Denoiser() = default;

    virtual Image apply(const Image& x) const = 0;
    virtual std::string name() const = 0;

    /// Known Lipschitz bound M, if any.
    virtual std::optional<double> declared_lipschitz() const { return std::nullopt; }

    virtual bool is_affine() const { return false; }
    /// L x for affine denoisers. Default: D(x) - D(0).
    virtual Image apply_linear(const Image& x) const;
    /// L^T u for affine denoisers. Default assumes L is self-adjoint.
    virtual Image apply_linear_adjoint(const Image& u) const { return apply_linear(u); }
    /// True when the Jacobian is symmetric (RED gradient identity holds exactly).
    virtual bool has_symmetric_jacobian() const { return false; }
};

class IdentityDenoiser final : public Denoiser {
public:
    Image apply(const Image& x) const override { return x; }
    std::string name() const override { return "identity"; }
    std::optional<double> declared_lipschitz() const override { return 1.0; }
    bool is_affine() const override { return true; }
    Image apply_linear(const Image& x) const override { return x; }
    bool has_symmetric_jacobian() const override { return true; }
};

/// D(x) = (1 - alpha) x + alpha (k * x) with circular convolution.
class LinearSmoother final : public Denoiser {
public:
    LinearSmoother(double alpha, Kernel kernel);

    Image apply(const Image& x) const override;
    std::string name() const override;
    /// 1 for a normalized nonnegative kernel; unset otherwise.
    std::optional<double> declared_lipschitz() const override;
    bool is_affine() const override { return true; }
    Image apply_linear(const Image& x) const override { return apply(x); }
    Image apply_linear_adjoint(const Image& u) const override;
    bool has_symmetric_jacobian() const override { return kernel_.is_symmetric(); }

    double alpha() const { return alpha_; }
    const Kernel& kernel() const { return kernel_; }

private:
    double alpha_;
    Kernel kernel_;
};

/// D(x) = anchor + rho (x - anchor), 0 <= rho < 1. An empty anchor means zero.
class ScaledContraction final : public Denoiser {
public:
    explicit ScaledContraction(double rho, Image anchor = {});

    Image apply(const Image& x) const override;
    std::string name() const override;
    std::optional<double> declared_lipschitz() const override { return rho_; }
    bool is_affine() const override { return true; }
    Image apply_linear(const Image& x) const override { return rho_ * x; }
    bool has_symmetric_jacobian() const override { return true; }

    double rho() const { return rho_; }

private:
    double rho_;
    Image anchor_;
};

/// window x window median with periodic boundary. Nonlinear; no declared bound.
class MedianFilter final : public Denoiser {
public:
    explicit MedianFilter(std::size_t window);

    Image apply(const Image& x) const override;
    std::string name() const override;

private:
    std::size_t window_;
};

inline Image denoise(const Denoiser& d, const Image& x) { return d.apply(x); }

/// Parses "identity", "smooth:ALPHA" (3x3 box kernel), "contract:RHO" or "median:W".
std::shared_ptr<const Denoiser> parse_denoiser_spec(const std::string& spec);

struct LipschitzEstimate {
    double value = 0.0;
    /// True when `value` is only an empirical lower bound (nonlinear denoisers).
    bool lower_bound_only = false;
};

/// Operator norm of the linear part by power iteration on L^T L for affine
/// denoisers; otherwise the largest |D(x)-D(x')|/|x-x'| over `trials` random pairs.
LipschitzEstimate lipschitz_estimate(const Denoiser& d, Shape probe_shape, int trials,
                                     unsigned long long seed);

} // namespace bregpnp
