#include "bregpnp/bregman_prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bregpnp/errors.hpp"

namespace bregpnp {

std::string to_string(const Regularizer& g) {
    switch (g.kind) {
    case Regularizer::Kind::Zero: return "zero";
    case Regularizer::Kind::NonnegIndicator: return "nonneg";
    case Regularizer::Kind::L1: return "l1:" + std::to_string(g.lambda);
    }
    return "unknown";
}

Regularizer parse_regularizer(const std::string& spec) {
    if (spec == "zero") return Regularizer::zero();
    if (spec == "nonneg") return Regularizer::nonneg();
    if (spec.rfind("l1:", 0) == 0) {
        const double lambda = std::stod(spec.substr(3));
        if (!(lambda >= 0.0)) throw ConfigError("l1 weight must be nonnegative");
        return Regularizer::l1(lambda);
    }
    throw ConfigError("unknown regularizer '" + spec + "' (expected zero, nonneg or l1:LAMBDA)");
}

double regularizer_value(const Regularizer& g, const Image& x) {
    switch (g.kind) {
    case Regularizer::Kind::Zero: return 0.0;
    case Regularizer::Kind::NonnegIndicator:
        return x.all_nonnegative() ? 0.0 : std::numeric_limits<double>::infinity();
    case Regularizer::Kind::L1: return g.lambda * norm1(x);
    }
    return 0.0;
}

namespace {

void require_step(double gamma) {
    if (!(gamma > 0.0)) throw ConfigError("proximal step gamma must be positive");
}

void require_positive(const Image& z, const char* op) {
    std::size_t bad = 0;
    for (double v : z.values()) bad += !(v > 0.0);
    if (bad > 0) {
        throw DomainError(std::string(op) + ": " + std::to_string(bad) + " nonpositive entries");
    }
}

} // namespace

Image bpo_euclidean(const Image& z, const Regularizer& g, double gamma) {
    require_step(gamma);
    Image out = z;
    switch (g.kind) {
    case Regularizer::Kind::Zero:
        break;
    case Regularizer::Kind::NonnegIndicator:
        for (double& v : out.values()) v = std::max(v, 0.0);
        break;
    case Regularizer::Kind::L1: {
        const double t = gamma * g.lambda;
        for (double& v : out.values()) v = std::copysign(std::max(std::abs(v) - t, 0.0), v);
        break;
    }
    }
    return out;
}

Image bpo_burg(const Image& z, const Regularizer& g, double gamma) {
    require_step(gamma);
    require_positive(z, "bpo_burg");
    Image out = z;
    if (g.kind == Regularizer::Kind::L1) {
        // -1/x + 1/z + gamma lambda = 0
        const double t = gamma * g.lambda;
        for (double& v : out.values()) v = v / (1.0 + t * v);
    }
    return out;
}

Image bpo_shannon(const Image& z, const Regularizer& g, double gamma) {
    require_step(gamma);
    require_positive(z, "bpo_shannon");
    Image out = z;
    if (g.kind == Regularizer::Kind::L1) {
        // log x - log z + gamma lambda = 0
        const double scale = std::exp(-gamma * g.lambda);
        for (double& v : out.values()) v *= scale;
    }
    return out;
}

Image bregman_prox(const ReferenceFunction& h, const Image& z, const Regularizer& g, double gamma) {
    switch (h.kind()) {
    case ReferenceKind::Quadratic: return bpo_euclidean(z, g, gamma);
    case ReferenceKind::BurgEntropy: return bpo_burg(z, g, gamma);
    case ReferenceKind::ShannonEntropy: return bpo_shannon(z, g, gamma);
    }
    throw ConfigError("unsupported reference function");
}

Image bregman_simplex_projection(const Image& z) {
    require_positive(z, "bregman_simplex_projection");
    return (1.0 / norm1(z)) * z;
}

} // namespace bregpnp
