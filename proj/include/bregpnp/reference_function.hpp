#pragma once

#include <string>

#include "bregpnp/image.hpp"

namespace bregpnp {

enum class ReferenceKind { Quadratic, BurgEntropy, ShannonEntropy };

std::string to_string(ReferenceKind kind);
ReferenceKind parse_reference_kind(const std::string& name);

/// Legendre function h generating a Bregman geometry.
///
/// Burg and Shannon entropies are neither strongly convex nor smooth on the whole
/// orthant, so their curvature constants are taken on a declared working box
/// [lower, upper] (lower > 0):
///   Quadratic  h = 1/2 |x|^2        mu_h = L_h = 1
///   Burg       h = -sum log x_i     mu_h = 1/upper^2, L_h = 1/lower^2
///   Shannon    h = sum x_i log x_i  mu_h = 1/upper,   L_h = 1/lower
class ReferenceFunction {
public:
    static ReferenceFunction quadratic();
    static ReferenceFunction burg(double lower = 1e-4, double upper = 1.0);
    static ReferenceFunction shannon(double lower = 1e-4, double upper = 1.0);

    ReferenceKind kind() const { return kind_; }
    double box_lower() const { return lower_; }
    double box_upper() const { return upper_; }
    double mu() const;
    double lipschitz() const;

    /// Burg and Shannon live on the positive orthant.
    bool needs_positive() const { return kind_ != ReferenceKind::Quadratic; }

private:
    ReferenceFunction(ReferenceKind kind, double lower, double upper);

    ReferenceKind kind_;
    double lower_;
    double upper_;
};

double h_value(const ReferenceFunction& h, const Image& x);
Image grad_h(const ReferenceFunction& h, const Image& x);
/// Gradient of the Fenchel conjugate, the inverse map of grad_h.
Image grad_h_conj(const ReferenceFunction& h, const Image& z);
/// B_h(x; y) = h(x) - h(y) - <grad h(y), x - y>.
double bregman_distance(const ReferenceFunction& h, const Image& x, const Image& y);

} // namespace bregpnp
