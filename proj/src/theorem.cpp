#include "bregpnp/theorem.hpp"

#include <algorithm>

#include "bregpnp/errors.hpp"

namespace bregpnp {

TheoremCertificate theorem_gate(double mu_h, double L_h, double mu_f, double L_f, double M) {
    if (!(mu_h > 0.0 && L_h > 0.0 && mu_f > 0.0 && L_f > 0.0 && M > 0.0)) {
        throw ConfigError("theorem_gate: all constants must be positive");
    }
    if (mu_h > L_h) throw ConfigError("theorem_gate: mu_h exceeds L_h");
    if (mu_f > L_f) throw ConfigError("theorem_gate: mu_f exceeds L_f");

    TheoremCertificate cert;
    cert.mu_h = mu_h;
    cert.L_h = L_h;
    cert.mu_f = mu_f;
    cert.L_f = L_f;
    cert.M = M;
    const double denominator = L_h * L_f - mu_h * mu_f;
    if (denominator > 0.0) cert.m_bound = mu_h * (mu_f + L_f) / denominator;
    cert.gamma_lower = std::max(0.0, (mu_h / mu_f) * (L_h / mu_h - 1.0 / M));
    cert.gamma_upper = (mu_h / L_f) * (1.0 + 1.0 / M);
    const bool m_ok = !cert.m_bound || M < *cert.m_bound;
    cert.satisfied = m_ok && !cert.gamma_interval_empty();
    return cert;
}

} // namespace bregpnp
