#pragma once

#include <memory>
#include <string>

#include "bregpnp/image.hpp"
#include "bregpnp/linear_operator.hpp"
#include "bregpnp/reference_function.hpp"

namespace bregpnp {

enum class FidelityKind { Poisson, Gaussian };

std::string to_string(FidelityKind kind);

/// Data-fidelity term f of a linear inverse problem y ~ N(A x).
///
/// Poisson: f(x) = 1^T A x - y^T log(A x), dropping the x-independent 1^T log(y!).
/// Gaussian: f(x) = 1/2 |A x - y|^2.
/// A x is clamped below by `eps` inside log and division for Poisson.
class Fidelity {
public:
    Fidelity(FidelityKind kind, std::shared_ptr<const LinearOperator> op, Image y, double eps = 1e-8);

    static Fidelity poisson(std::shared_ptr<const LinearOperator> op, Image y, double eps = 1e-8) {
        return Fidelity(FidelityKind::Poisson, std::move(op), std::move(y), eps);
    }
    static Fidelity gaussian(std::shared_ptr<const LinearOperator> op, Image y) {
        return Fidelity(FidelityKind::Gaussian, std::move(op), std::move(y));
    }

    FidelityKind kind() const { return kind_; }
    const LinearOperator& op() const { return *op_; }
    std::shared_ptr<const LinearOperator> op_ptr() const { return op_; }
    const Image& measurements() const { return y_; }
    double eps() const { return eps_; }

    double value(const Image& x) const;
    Image gradient(const Image& x) const;

private:
    FidelityKind kind_;
    std::shared_ptr<const LinearOperator> op_;
    Image y_;
    double eps_;
};

inline double f_value(const Fidelity& f, const Image& x) { return f.value(x); }
inline Image f_grad(const Fidelity& f, const Image& x) { return f.gradient(x); }

/// Constant L such that L h - f is convex.
///   (Poisson, Burg)       -> |y|_1
///   (Gaussian, Quadratic) -> |A|_2^2 by power iteration on A^T A
/// Other pairs throw ConfigError.
double relative_smoothness(const Fidelity& f, const ReferenceFunction& h);

} // namespace bregpnp
