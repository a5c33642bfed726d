#pragma once

#include <string>

#include "bregpnp/image.hpp"
#include "bregpnp/reference_function.hpp"

namespace bregpnp {

/// Regularizers g with closed-form (Bregman) proximal operators.
struct Regularizer {
    enum class Kind { Zero, NonnegIndicator, L1 };

    Kind kind = Kind::Zero;
    double lambda = 0.0;  ///< weight of the L1 term

    static Regularizer zero() { return {Kind::Zero, 0.0}; }
    static Regularizer nonneg() { return {Kind::NonnegIndicator, 0.0}; }
    static Regularizer l1(double lambda) { return {Kind::L1, lambda}; }
};

std::string to_string(const Regularizer& g);
/// "zero", "nonneg" or "l1:LAMBDA".
Regularizer parse_regularizer(const std::string& spec);

/// g(x); +infinity for the indicator outside the nonnegative orthant.
double regularizer_value(const Regularizer& g, const Image& x);

/// Euclidean proximal operator argmin_x 1/2|x - z|^2 + gamma g(x).
Image bpo_euclidean(const Image& z, const Regularizer& g, double gamma);

/// Left Bregman proximal operator under the Burg entropy:
/// argmin_x B_h(x; z) + gamma g(x), for z > 0.
Image bpo_burg(const Image& z, const Regularizer& g, double gamma);

/// Left Bregman proximal operator under the Shannon entropy, for z > 0.
Image bpo_shannon(const Image& z, const Regularizer& g, double gamma);

/// Dispatches on the kind of h.
Image bregman_prox(const ReferenceFunction& h, const Image& z, const Regularizer& g, double gamma);

/// Shannon-entropy Bregman projection of z > 0 onto the probability simplex: z / |z|_1.
Image bregman_simplex_projection(const Image& z);

} // namespace bregpnp
