#include "vsheet/freq.hpp"

#include <cmath>

#include "vsheet/errors.hpp"

namespace vsheet {

bool FrequencyPoint::on_sigma(double tol) const {
    return gamma >= 0.0 && std::abs(sigma_norm_sq() - 1.0) <= tol;
}

FrequencyPoint normalize_to_hemisphere(double gamma, double delta, double eta, double weight) {
    if (gamma == 0.0 && delta == 0.0 && eta == 0.0)
        throw Error(ErrorKind::ZeroFrequency, "(gamma, delta, eta) = 0");
    if (gamma < 0.0) throw Error(ErrorKind::OutsideCone, "gamma < 0");
    if (!(weight > 0.0)) throw Error(ErrorKind::OutsideCone, "hemisphere weight must be > 0");
    const double r = std::sqrt(gamma * gamma + delta * delta + weight * weight * eta * eta);
    return {gamma / r, delta / r, eta / r, weight};
}

FrequencyPoint normalize_to_hemisphere(const FrequencyPoint& fp) {
    return normalize_to_hemisphere(fp.gamma, fp.delta, fp.eta, fp.weight);
}

BranchValue branch_sqrt(double p, double q, int sgn_hint) {
    if (p == 0.0 && q == 0.0) return {};
    if (q == 0.0 && p < 0.0) {
        if (sgn_hint == 0)
            throw Error(ErrorKind::BranchAmbiguity, "p < 0, q = 0 needs a ray-limit sign");
        return {0.0, -(sgn_hint > 0 ? 1.0 : -1.0) * std::sqrt(-p), true};
    }
    // Evaluate the larger of |x|, |y| directly and recover the other from
    // 2xy = q, avoiding the cancellation in r - |p|.
    const double r = std::hypot(p, q);
    double xa, ya;
    if (p >= 0.0) {
        xa = std::sqrt(0.5 * (p + r));
        ya = std::abs(q) / (2.0 * xa);
    } else {
        ya = std::sqrt(0.5 * (r - p));
        xa = std::abs(q) / (2.0 * ya);
    }
    const double sq = q > 0.0 ? 1.0 : (q < 0.0 ? -1.0 : 0.0);
    return {-xa, -sq * ya, false};
}

cplx omega_sq_rhs(double v, double f_sq, double c, const FrequencyPoint& fp) {
    const cplx s = fp.tau() + cplx(0.0, v * fp.eta);
    return (s * s + f_sq * fp.eta * fp.eta) / (c * c) + fp.eta * fp.eta;
}

BranchValue omega_branch(double v, double f_sq, double c, const FrequencyPoint& fp) {
    // Real and imaginary parts of ω² in real arithmetic so that q is exactly
    // zero on γ = 0, which is where the sign rule has to take over.
    const double g = fp.gamma, e = fp.eta;
    const double dv = fp.delta + v * e;
    const double c2 = c * c;
    const double p = (g * g - dv * dv + f_sq * e * e) / c2 + e * e;
    const double q = 2.0 * g * dv / c2;
    const int hint = dv > 0.0 ? 1 : (dv < 0.0 ? -1 : 0);
    return branch_sqrt(p, q, hint);
}

cplx omega(const BackgroundState& s, Side side, const FrequencyPoint& fp) {
    return omega_branch(s.v(side), s.f_sq(), s.c, fp).value();
}

}  // namespace vsheet
