#include "vsheet/kernels.hpp"

#include <algorithm>

#include "vsheet/lopatinskii.hpp"
#include "vsheet/modes.hpp"
#include "vsheet/symbol.hpp"

namespace vsheet {

int default_workers() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

SampleStat reduce_max(const std::vector<double>& xs) {
    SampleStat s;
    s.n = xs.size();
    s.worst = xs.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::isnan(xs[i])) return {xs[i], i, xs.size()};
        if (xs[i] > s.worst) {
            s.worst = xs[i];
            s.worst_index = i;
        }
    }
    return s;
}

SampleStat reduce_min(const std::vector<double>& xs) {
    SampleStat s;
    s.n = xs.size();
    s.worst = xs.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::isnan(xs[i])) return {xs[i], i, xs.size()};
        if (xs[i] < s.worst) {
            s.worst = xs[i];
            s.worst_index = i;
        }
    }
    return s;
}

double metric_factorization(const Model& m, const FrequencyPoint& fp) {
    const LopatinskiiEval ev = lopatinskii_eval(m, fp);
    if (!ev.det_factored) return kNaN;
    return std::abs(ev.det_direct - *ev.det_factored) / (1.0 + std::abs(*ev.det_factored));
}

double metric_eigen_residual(const Model& m, const FrequencyPoint& fp) {
    const Mat4c a = m.reduced_symbol(fp);
    const EigenData e = m.eigen_data(fp);
    auto rel = [&](const Vec4c& v, cplx w) {
        const double scale = (a.norm() + std::abs(w)) * v.norm();
        return scale > 0.0 ? (a * v - w * v).norm() / scale : 0.0;
    };
    return std::max(rel(e.e_minus_r, e.omega_r), rel(e.e_minus_l, e.omega_l));
}

double metric_e_minus_min_norm(const Model& m, const FrequencyPoint& fp) {
    const EigenData e = m.eigen_data(fp);
    return std::min(e.e_minus_r.norm(), e.e_minus_l.norm());
}

double metric_dispersion(const Model& m, const FrequencyPoint& fp) {
    double worst = 0.0;
    for (Side side : {Side::right, Side::left}) {
        cplx rhs;
        if (auto el = dynamic_cast<const ElasticModel*>(&m)) {
            const BackgroundState& s = el->state();
            rhs = omega_sq_rhs(s.v(side), s.f_sq(), s.c, fp);
        } else if (auto eu = dynamic_cast<const EulerModel*>(&m)) {
            const double v = side == Side::right ? eu->params().v_r : -eu->params().v_r;
            rhs = omega_sq_rhs(v, 0.0, eu->params().c, fp);
        } else {
            const auto& mhd = dynamic_cast<const MhdModel&>(m);
            cplx n, mm;
            mhd.symbol_entries(side, fp, n, mm);
            rhs = n * n - mm * mm;
        }
        const cplx w = m.side_symbol(side, fp).omega;
        worst = std::max(worst, std::abs(w * w - rhs) / (1.0 + std::abs(rhs)));
    }
    return worst;
}

double metric_max_re_omega(const Model& m, const FrequencyPoint& fp) {
    return std::max(m.side_symbol(Side::right, fp).omega.real(),
                    m.side_symbol(Side::left, fp).omega.real());
}

double metric_triangularization(const Model& m, const FrequencyPoint& fp) {
    return triangularization_residuals(m, fp, separation_basis(m, fp)).off_structure;
}

double metric_triangular_diagonal(const Model& m, const FrequencyPoint& fp) {
    const Triangularization t = triangularization_residuals(m, fp, separation_basis(m, fp));
    return std::max(t.diag_error, t.z_error);
}

double metric_pivot_neighbourhood(const Model& m, const FrequencyPoint& fp, double step) {
    const SeparationBasis b = separation_basis(m, fp);
    const double d = step / std::sqrt(3.0);
    const FrequencyPoint near = m.normalize(m.point(fp.gamma + d, fp.delta + d, fp.eta + d));
    const Triangularization t = triangularization_residuals(m, near, b);
    return std::max({t.off_structure, t.diag_error, t.z_error});
}

double metric_symbol_crosscheck(const BackgroundState& s, const FrequencyPoint& fp) {
    const Mat4c closed = reduced_symbol_closed(s, fp).a_mat;
    const Mat4c elim = reduced_symbol_via_elimination(s, fp).a_mat;
    return (closed - elim).cwiseAbs().maxCoeff() / (1.0 + closed.cwiseAbs().maxCoeff());
}

double metric_prop41(const BackgroundState& s, Side side, const FrequencyPoint& fp) {
    return std::abs(nondegeneracy_value(s, side, fp));
}

double metric_qb_shape(const BackgroundState& s, const FrequencyPoint& raw) {
    const FrequencyPoint fp = normalize_to_hemisphere(raw.gamma, raw.delta, raw.eta, s.v_r);
    const BoundaryReduction br = assemble_boundary(s, fp);
    const Vec7c qb = br.q_mat * boundary_symbol(s, fp);
    double worst = 0.0;
    for (int k = 0; k < 7; ++k)
        if (k != 2) worst = std::max(worst, std::abs(qb(k)));
    return worst;
}

double metric_qm_displayed(const BackgroundState& s, const FrequencyPoint& raw) {
    const FrequencyPoint fp = normalize_to_hemisphere(raw.gamma, raw.delta, raw.eta, s.v_r);
    const BoundaryReduction br = assemble_boundary(s, fp);
    const Mat78c prod = br.q_mat * assemble_interior(s).m_bdry.cast<cplx>();
    return (prod - qm_displayed(s, fp)).cwiseAbs().maxCoeff();
}

double metric_theta_abs(const BackgroundState& s, const FrequencyPoint& fp) {
    return std::abs(assemble_boundary(s, fp).theta);
}

double metric_omega_homogeneity(const BackgroundState& s, const FrequencyPoint& fp) {
    double worst = 0.0;
    for (Side side : {Side::right, Side::left}) {
        const cplx w = omega(s, side, fp);
        for (double k : {0.5, 2.0, 10.0}) {
            const cplx ws = omega(s, side, fp.scaled(k));
            worst = std::max(worst, std::abs(ws - k * w) / std::max(std::abs(k * w), 1e-300));
        }
    }
    return worst;
}

}  // namespace vsheet
