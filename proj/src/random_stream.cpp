#include "tokensim/random_stream.hpp"

#include <cmath>
#include <numbers>

#include "tokensim/errors.hpp"

namespace tokensim {

double RandomStream::standard_normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t RandomStream::poisson(double mean) {
    if (!std::isfinite(mean) || mean < 0.0) {
        throw InvalidMean("Poisson mean must be finite and >= 0, got " + std::to_string(mean));
    }
    if (mean == 0.0) return 0;

    if (mean < kPoissonNormalThreshold) {
        const double limit = std::exp(-mean);
        std::int64_t k = 0;
        double product = uniform();
        while (product > limit) {
            ++k;
            product *= uniform();
        }
        return k;
    }

    const double x = std::round(mean + std::sqrt(mean) * standard_normal());
    return x < 0.0 ? 0 : static_cast<std::int64_t>(x);
}

}  // namespace tokensim
