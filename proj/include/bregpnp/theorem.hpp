#pragma once

#include <optional>

namespace bregpnp {

/// Sufficient conditions for the PnP Bregman proximal gradient iteration
/// x <- D(grad_h*(grad_h - gamma grad_f)(x)) to converge to a fixed point, for
/// mu_h-strongly convex h with L_h-Lipschitz gradient, mu_f-strongly convex f
/// with L_f-Lipschitz gradient and M-Lipschitz D:
///
///   M < mu_h (mu_f + L_f) / (L_h L_f - mu_h mu_f)
///   (mu_h / mu_f)(L_h / mu_h - 1/M) < gamma < (mu_h / L_f)(1 + 1/M)
///
/// A nonpositive denominator leaves M unconstrained (m_bound empty).
struct TheoremCertificate {
    double mu_h = 0.0;
    double L_h = 0.0;
    double mu_f = 0.0;
    double L_f = 0.0;
    double M = 0.0;
    std::optional<double> m_bound;  ///< empty: unbounded
    double gamma_lower = 0.0;       ///< clamped at 0
    double gamma_upper = 0.0;
    bool satisfied = false;

    bool gamma_interval_empty() const { return !(gamma_lower < gamma_upper); }
    bool admits_step(double gamma) const { return gamma_lower < gamma && gamma < gamma_upper; }
    double gamma_midpoint() const { return 0.5 * (gamma_lower + gamma_upper); }
};

/// Throws ConfigError for nonpositive constants, mu_h > L_h or mu_f > L_f.
TheoremCertificate theorem_gate(double mu_h, double L_h, double mu_f, double L_f, double M);

} // namespace bregpnp
