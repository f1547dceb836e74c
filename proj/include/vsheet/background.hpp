#pragma once

#include <string>
#include <vector>

namespace vsheet {

enum class Side { right, left };

// Rectilinear vortex-sheet state. Only the right-side values are stored;
// the left side is the mirror vˡ = −vʳ, Fˡ = −Fʳ.
struct BackgroundState {
    double rho = 1.0;
    double v_r = 1.0;
    double f11_r = 0.0;
    double f12_r = 0.0;
    double c = 1.0;
    bool degenerate_f = false;  // F11 or F12 is zero (permissive mode only)

    double f_sq() const { return f11_r * f11_r + f12_r * f12_r; }
    double v(Side s) const { return s == Side::right ? v_r : -v_r; }
    double f11(Side s) const { return s == Side::right ? f11_r : -f11_r; }
    double f12(Side s) const { return s == Side::right ? f12_r : -f12_r; }
};

BackgroundState validate_state(double rho, double v_r, double f11_r, double f12_r, double c,
                               bool strict);

struct DerivedConstants {
    double f_sq;
    double v1_sq;
    double v2_sq;
    double weak_threshold_sq;
};

DerivedConstants derived_constants(const BackgroundState& s);

enum class CaseId { Case1, Case2, Case3, Case4, Case5, Case6 };
enum class Regime { StableLoss1, StableLoss2, StableLoss3, Unstable };

// A root τ = iθη on ∂Σ, or τ = θη real (interior) in Case 6.
struct ExpectedRoot {
    double theta;
    int multiplicity;
    bool interior = false;
};

struct CaseLabel {
    CaseId case_id;
    Regime regime;
    std::vector<ExpectedRoot> expected_roots;  // sorted by theta
};

inline constexpr double kDefaultCaseTol = 1e-9;

Regime regime_of(CaseId id);
CaseLabel classify_case(const BackgroundState& s, double tol = kDefaultCaseTol);
CaseLabel label_for_case(const BackgroundState& s, CaseId forced);

std::string to_string(CaseId id);
std::string to_string(Regime r);
CaseId parse_case_id(const std::string& text);
Regime parse_regime(const std::string& text);

}  // namespace vsheet
