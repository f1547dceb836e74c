#pragma once

#include <complex>

#include "vsheet/background.hpp"

namespace vsheet {

using cplx = std::complex<double>;

struct FrequencyPoint {
    double gamma = 0.0;
    double delta = 0.0;
    double eta = 0.0;
    double weight = 1.0;

    cplx tau() const { return {gamma, delta}; }
    double sigma_norm_sq() const { return gamma * gamma + delta * delta + weight * weight * eta * eta; }
    bool on_sigma(double tol = 1e-12) const;
    FrequencyPoint scaled(double s) const { return {s * gamma, s * delta, s * eta, weight}; }
};

// Positive rescaling onto Σ = {|τ|² + w²η² = 1, γ ≥ 0}.
FrequencyPoint normalize_to_hemisphere(double gamma, double delta, double eta, double weight);
FrequencyPoint normalize_to_hemisphere(const FrequencyPoint& fp);

struct BranchValue {
    double x = 0.0;
    double y = 0.0;
    bool at_cut = false;

    cplx value() const { return {x, y}; }
};

// Square root with x ≤ 0. On the cut {p<0, q=0} the caller must pass the sign
// of the ray-limit context in sgn_hint (±1); 0 there raises BranchAmbiguity.
BranchValue branch_sqrt(double p, double q, int sgn_hint = 0);

// ω for one side of the elastic dispersion relation
//   ω² = [(τ+ivη)² + F²η²]/c² + η².
// v is the side's tangential velocity.
BranchValue omega_branch(double v, double f_sq, double c, const FrequencyPoint& fp);
cplx omega(const BackgroundState& s, Side side, const FrequencyPoint& fp);

// Right-hand side of the dispersion relation, for residual checks.
cplx omega_sq_rhs(double v, double f_sq, double c, const FrequencyPoint& fp);

}  // namespace vsheet
