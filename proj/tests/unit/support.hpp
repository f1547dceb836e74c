#pragma once

#include <cmath>

#include "vsheet/models.hpp"

namespace vtest {

using vsheet::cplx;

inline vsheet::BackgroundState state(double v, double f11 = 1.0, double f12 = 0.0, double c = 1.0) {
    return vsheet::validate_state(1.0, v, f11, f12, c, false);
}

// The six case representatives at F = (1, 0), c = 1, plus the coincidence state
// v² = (F² + c²)/4.
inline constexpr double kCase1 = 2.0;
inline constexpr double kCase2 = 0.5;
inline const double kCase3 = std::sqrt(3.0 / 8.0);
inline const double kCase4 = std::sqrt(3.0);
inline constexpr double kCase5 = 1.0;
inline constexpr double kCase6 = 1.5;
inline const double kCoincidence = std::sqrt(0.5);

inline double err(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace vtest
