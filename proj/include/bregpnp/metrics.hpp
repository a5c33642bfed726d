#pragma once

#include "bregpnp/image.hpp"

namespace bregpnp {

/// Value returned by psnr() when the two images are identical.
inline constexpr double kPsnrCap = 400.0;

double mean_squared_error(const Image& reference, const Image& test);

/// 10 log10(peak^2 / MSE) in dB; kPsnrCap when MSE is zero.
double psnr(const Image& reference, const Image& test, double peak);

} // namespace bregpnp
