#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vsheet/freq.hpp"

namespace vsheet {

// Platform-independent double in [0, 1) from the top 53 bits of one draw.
// std::uniform_real_distribution is implementation-defined, so it is avoided
// to keep seeded runs identical across standard libraries.
inline double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Points on Σ drawn uniformly in the angles
//   γ = cos θ₁, δ = sin θ₁ cos θ₂, wη = sin θ₁ sin θ₂,
// θ₁ ∈ [0, acos γ_min], θ₂ ∈ [0, 2π), so every sample has γ ≥ γ_min.
std::vector<FrequencyPoint> sample_sigma(std::size_t n, std::uint64_t seed, double weight,
                                         double gamma_min);

}  // namespace vsheet
