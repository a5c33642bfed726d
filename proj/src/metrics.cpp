#include "bregpnp/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "bregpnp/errors.hpp"

namespace bregpnp {

double mean_squared_error(const Image& reference, const Image& test) {
    require_same_shape(reference, test, "mean_squared_error");
    double acc = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double d = reference[i] - test[i];
        acc += d * d;
    }
    return acc / static_cast<double>(reference.size());
}

double psnr(const Image& reference, const Image& test, double peak) {
    if (!(peak > 0.0)) throw ConfigError("psnr peak must be positive");
    const double mse = mean_squared_error(reference, test);
    if (mse == 0.0) return kPsnrCap;
    return std::min(kPsnrCap, 10.0 * std::log10(peak * peak / mse));
}

} // namespace bregpnp
