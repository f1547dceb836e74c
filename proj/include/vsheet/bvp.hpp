#pragma once

#include <vector>

#include "vsheet/fit.hpp"
#include "vsheet/models.hpp"

namespace vsheet {

// Ŵⁿᶜ(x₂) = z1·e^{ωʳx₂}E₋ʳ + z3·e^{ωˡx₂}E₋ˡ; the outgoing coefficients are zero.
struct DecayingSolution {
    FrequencyPoint fp;  // Σ-normalized
    cplx z1 = 0.0, z3 = 0.0;
    cplx omega_r = 0.0, omega_l = 0.0;
    Vec4c e_r = Vec4c::Zero(), e_l = Vec4c::Zero();
    double boundary_residual = 0.0;  // ‖βŴⁿᶜ(0) − h‖ / ‖h‖

    Vec4c profile(double x2) const;
    Vec4c derivative(double x2) const;
    double decay_rate() const;  // |max(Re ωʳ, Re ωˡ)|
};

// NearSingularBoundary when |Δ| ≤ 1e-12·‖β(E₋ʳ,E₋ˡ)‖_F².
DecayingSolution solve_decaying(const Model& m, const FrequencyPoint& fp, const Vec2c& h);

// ‖D_h Ŵⁿᶜ(x₂) − AŴⁿᶜ(x₂)‖ / (‖AŴⁿᶜ‖ + ‖Ŵⁿᶜ‖) with a second-order difference
// (one-sided at x₂ = 0).
double ode_residual(const Model& m, const DecayingSolution& sol, double x2, double h = 1e-5);
// max(0, ‖Ŵⁿᶜ(x₂)‖ / (‖Ŵⁿᶜ(0)‖e^{−γ_eff x₂}) − 1).
double decay_excess(const DecayingSolution& sol, double x2);

// φ̂ from θφ̂ + ℓ·Ŵⁿ(0) = b*·ĝ.
cplx reconstruct_front(const BackgroundState& s, const FrequencyPoint& fp, const Vec8c& w_n0,
                       const Vec7c& g_hat);

struct ProbeSample {
    double gamma;
    double sigma_min;
    double wnc0_norm;  // NaN where the solve was refused
};

struct ProbeResult {
    std::vector<ProbeSample> samples;
    LogLogFit sigma_fit;  // σ_min ~ κ γ^j
    LogLogFit wnc_fit;    // ‖Ŵⁿᶜ(0)‖ ~ C γ^{−j}
    double j_sigma = 0.0;
    double j_wnc = 0.0;
};

// Approach τ = iθη along normalize(γ, θη0, η0) with fixed data h. The fit
// exceptions (FitDiverged) propagate.
ProbeResult energy_probe(const Model& m, double theta, const Vec2c& h,
                         const std::vector<double>& gammas, int eta_sign = 1,
                         double floor = 1e-14);

}  // namespace vsheet
