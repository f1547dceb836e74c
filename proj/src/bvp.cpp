#include "vsheet/bvp.hpp"

#include <algorithm>
#include <cmath>

#include "vsheet/errors.hpp"
#include "vsheet/lopatinskii.hpp"

namespace vsheet {

Vec4c DecayingSolution::profile(double x2) const {
    return z1 * std::exp(omega_r * x2) * e_r + z3 * std::exp(omega_l * x2) * e_l;
}

Vec4c DecayingSolution::derivative(double x2) const {
    return z1 * omega_r * std::exp(omega_r * x2) * e_r + z3 * omega_l * std::exp(omega_l * x2) * e_l;
}

double DecayingSolution::decay_rate() const {
    return std::abs(std::max(omega_r.real(), omega_l.real()));
}

DecayingSolution solve_decaying(const Model& m, const FrequencyPoint& raw, const Vec2c& h) {
    const LopatinskiiEval ev = lopatinskii_eval(m, raw);
    DecayingSolution sol;
    sol.fp = ev.fp;
    const EigenData e = m.eigen_data(ev.fp);
    sol.omega_r = e.omega_r;
    sol.omega_l = e.omega_l;
    sol.e_r = e.e_minus_r;
    sol.e_l = e.e_minus_l;
    if (h.squaredNorm() == 0.0) return sol;
    if (!(std::abs(ev.det_direct) > 1e-12 * ev.mat.squaredNorm()))
        throw Error(ErrorKind::NearSingularBoundary, "Lopatinskii determinant too small to solve");
    // Cramer's rule on the 2×2 system.
    const Mat2c& p = ev.mat;
    sol.z1 = (h(0) * p(1, 1) - p(0, 1) * h(1)) / ev.det_direct;
    sol.z3 = (p(0, 0) * h(1) - h(0) * p(1, 0)) / ev.det_direct;
    const Vec2c res = m.beta(ev.fp) * sol.profile(0.0) - h;
    sol.boundary_residual = res.norm() / h.norm();
    return sol;
}

double ode_residual(const Model& m, const DecayingSolution& sol, double x2, double h) {
    const Vec4c fd = x2 > h ? Vec4c((sol.profile(x2 + h) - sol.profile(x2 - h)) / (2.0 * h))
                            : Vec4c((-3.0 * sol.profile(x2) + 4.0 * sol.profile(x2 + h) -
                                     sol.profile(x2 + 2.0 * h)) / (2.0 * h));
    const Vec4c aw = m.reduced_symbol(sol.fp) * sol.profile(x2);
    const double scale = aw.norm() + sol.profile(x2).norm();
    return scale > 0.0 ? (fd - aw).norm() / scale : 0.0;
}

double decay_excess(const DecayingSolution& sol, double x2) {
    const double w0 = sol.profile(0.0).norm();
    if (w0 == 0.0) return 0.0;
    const double bound = w0 * std::exp(-sol.decay_rate() * x2);
    return std::max(0.0, sol.profile(x2).norm() / bound - 1.0);
}

cplx reconstruct_front(const BackgroundState& s, const FrequencyPoint& fp, const Vec8c& w_n0,
                       const Vec7c& g_hat) {
    const BoundaryReduction br = assemble_boundary(s, fp);
    // Row-vector products, not Hermitian inner products.
    const cplx bg = (br.b_star.transpose() * g_hat)(0);
    const cplx lw = (br.ell.transpose() * w_n0)(0);
    return (bg - lw) / br.theta;
}

ProbeResult energy_probe(const Model& m, double theta, const Vec2c& h,
                         const std::vector<double>& gammas, int eta_sign, double floor) {
    ProbeResult out;
    std::vector<double> gs, sig, wn;
    for (double g : gammas) {
        const FrequencyPoint fp = approach_point(m, theta, g, eta_sign);
        const LopatinskiiEval ev = lopatinskii_eval(m, fp);
        ProbeSample smp{ev.fp.gamma, ev.sigma_min, kNaN};
        try {
            smp.wnc0_norm = solve_decaying(m, fp, h).profile(0.0).norm();
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NearSingularBoundary) throw;
        }
        out.samples.push_back(smp);
        gs.push_back(smp.gamma);
        sig.push_back(smp.sigma_min);
        wn.push_back(smp.wnc0_norm);
    }
    out.sigma_fit = fit_loglog(gs, sig, floor);
    out.j_sigma = out.sigma_fit.slope;
    out.wnc_fit = fit_loglog(gs, wn, floor);
    out.j_wnc = -out.wnc_fit.slope;
    return out;
}

}  // namespace vsheet
