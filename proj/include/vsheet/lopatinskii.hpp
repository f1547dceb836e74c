#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "vsheet/fit.hpp"
#include "vsheet/models.hpp"

namespace vsheet {

struct SingularValues2 {
    double min;
    double max;
};

// Closed form for 2×2: σ_max² = (s + √(s² − 4|det|²))/2 with s = ‖M‖_F², σ_min = |det|/σ_max.
SingularValues2 singular_values_2x2(const Mat2c& m);

struct LopatinskiiEval {
    FrequencyPoint fp;  // Σ-normalized
    Mat2c mat;          // β·[E₋ʳ | E₋ˡ]
    cplx det_direct;
    std::optional<cplx> det_factored;
    double sigma_min;
    double sigma_max;
    bool at_cut;
};

LopatinskiiEval lopatinskii_eval(const Model& m, const FrequencyPoint& fp);
cplx lopatinskii_det(const Model& m, const FrequencyPoint& fp);

// Σ point on the path approaching the ∂Σ point τ = iθη0, η0 = sgn/√(θ² + w²):
// normalize(γ, θη0, η0).
FrequencyPoint approach_point(const Model& m, double theta, double gamma, int eta_sign = 1);
// ∂Σ point τ = iθη.
FrequencyPoint boundary_point(const Model& m, double theta, int eta_sign = 1);
// Interior point with real τ = θη.
FrequencyPoint real_tau_point(const Model& m, double theta, int eta_sign = 1);

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RootRecord {
    double theta = 0.0;
    int multiplicity_expected = 0;  // 0: not listed by the case table
    bool interior = false;
    bool matched = false;
    double candidate = kNaN;  // analytic location it matched
    double abs_delta = kNaN;  // |Δ| at theta
    int cluster_size = 0;     // roots of the local interpolant in the polish window
    double slope_fitted = kNaN;
    double slope_residual = kNaN;
    double kappa_fitted = kNaN;
    double lb_exponent_fitted = kNaN;
};

struct ScanConfig {
    int samples = 10000;
    double half_width = 0.0;     // 0: model default
    double theta_tol = 1e-12;    // golden-section stop
    double accept_rel = 1e-8;    // |Δ| ≤ accept_rel · max(1, max|Δ|) counts as a root
    double match_tol = 1e-6;
    bool interior = true;        // also scan real τ = θη, θ > 0
    int workers = 1;
};

struct RootScan {
    std::vector<RootRecord> roots;       // matched, sorted by (interior, theta)
    std::vector<RootRecord> unexpected;  // numerical roots with no analytic candidate
    std::vector<RootCandidate> missing;  // listed by the case table but not found
    double delta_scale = 0.0;            // max |Δ| over the ∂Σ scan
    int rejected_minima = 0;             // local minima above the acceptance threshold
};

// Throws UnexpectedRoot when strict and anything is unmatched.
RootScan find_roots(const Model& m, int eta_sign, const ScanConfig& cfg, bool strict = false);

struct FitWindow {
    double lo = 1e-6;
    double hi = 1e-2;
    int points = 17;
    double floor = 1e-14;
    double max_residual = 0.05;
};

RootRecord estimate_multiplicity(const Model& m, RootRecord root, int eta_sign = 1,
                                 const FitWindow& w = {});
RootRecord lower_bound_scan(const Model& m, RootRecord root, int eta_sign = 1,
                            const FitWindow& w = {});

struct Verdict {
    std::optional<CaseLabel> label;
    RootScan scan;
    std::optional<double> witness_abs_delta;  // Case 6: |Δ| at the interior candidate
    std::vector<std::string> mismatches;
    bool confident() const { return mismatches.empty(); }
};

struct VerdictConfig {
    ScanConfig scan;
    FitWindow window;
    double slope_tol = 0.1;
    double exponent_tol = 0.15;
};

Verdict stability_verdict(const Model& m, const VerdictConfig& cfg = {});

}  // namespace vsheet
