#include "bregpnp/fidelity.hpp"

#include <algorithm>
#include <cmath>

#include "bregpnp/errors.hpp"

namespace bregpnp {

std::string to_string(FidelityKind kind) {
    return kind == FidelityKind::Poisson ? "poisson" : "gaussian";
}

Fidelity::Fidelity(FidelityKind kind, std::shared_ptr<const LinearOperator> op, Image y, double eps)
    : kind_(kind), op_(std::move(op)), y_(std::move(y)), eps_(eps) {
    if (!op_) throw ConfigError("fidelity needs a measurement operator");
    if (y_.shape() != op_->output_shape()) {
        throw DimensionError("measurements do not match the operator output shape");
    }
    if (!(eps_ > 0.0)) throw ConfigError("fidelity clamp eps must be positive");
    if (!y_.all_finite()) throw ConfigError("measurements must be finite");
    if (kind_ == FidelityKind::Poisson && !y_.all_nonnegative()) {
        throw ConfigError("poisson measurements must be nonnegative counts");
    }
}

double Fidelity::value(const Image& x) const {
    const Image ax = op_->apply(x);
    double acc = 0.0;
    if (kind_ == FidelityKind::Poisson) {
        for (std::size_t i = 0; i < ax.size(); ++i) {
            acc += ax[i];
            if (y_[i] != 0.0) acc -= y_[i] * std::log(std::max(ax[i], eps_));
        }
    } else {
        for (std::size_t i = 0; i < ax.size(); ++i) {
            const double r = ax[i] - y_[i];
            acc += 0.5 * r * r;
        }
    }
    return acc;
}

Image Fidelity::gradient(const Image& x) const {
    Image r = op_->apply(x);
    if (kind_ == FidelityKind::Poisson) {
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = 1.0 - y_[i] / std::max(r[i], eps_);
    } else {
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y_[i];
    }
    return op_->apply_adjoint(r);
}

double relative_smoothness(const Fidelity& f, const ReferenceFunction& h) {
    if (f.kind() == FidelityKind::Poisson && h.kind() == ReferenceKind::BurgEntropy) {
        return norm1(f.measurements());
    }
    if (f.kind() == FidelityKind::Gaussian && h.kind() == ReferenceKind::Quadratic) {
        return spectral_norm_squared(f.op(), 50, 1e-8);
    }
    throw ConfigError("no relative smoothness constant for the (" + to_string(f.kind()) + ", " +
                      to_string(h.kind()) + ") pair");
}

} // namespace bregpnp
