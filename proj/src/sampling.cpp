#include "vsheet/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vsheet {

std::vector<FrequencyPoint> sample_sigma(std::size_t n, std::uint64_t seed, double weight,
                                         double gamma_min) {
    std::mt19937_64 rng(seed);
    const double t1_max = std::acos(std::clamp(gamma_min, 0.0, 1.0));
    std::vector<FrequencyPoint> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t1 = t1_max * unit_double(rng);
        const double t2 = 2.0 * std::numbers::pi * unit_double(rng);
        FrequencyPoint p{std::max(std::cos(t1), gamma_min), std::sin(t1) * std::cos(t2),
                         std::sin(t1) * std::sin(t2) / weight, weight};
        out.push_back(p);
    }
    return out;
}

}  // namespace vsheet
