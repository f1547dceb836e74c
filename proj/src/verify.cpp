#include "vsheet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "vsheet/bvp.hpp"
#include "vsheet/errors.hpp"
#include "vsheet/kernels.hpp"
#include "vsheet/lopatinskii.hpp"
#include "vsheet/modes.hpp"
#include "vsheet/sampling.hpp"

namespace vsheet {

std::string to_string(Relation r) {
    switch (r) {
        case Relation::at_most: return "<=";
        case Relation::below: return "<";
        case Relation::above: return ">";
    }
    return "<=";
}

Relation parse_relation(const std::string& text) {
    if (text == "<=") return Relation::at_most;
    if (text == "<") return Relation::below;
    if (text == ">") return Relation::above;
    throw std::invalid_argument("unknown relation '" + text + "'");
}

bool holds(Relation r, double worst, double threshold) {
    switch (r) {
        case Relation::at_most: return worst <= threshold;
        case Relation::below: return worst < threshold;
        case Relation::above: return worst > threshold;
    }
    return false;
}

bool all_pass(const std::vector<InvariantResult>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const InvariantResult& r) { return r.pass; });
}

namespace {

using PointMetric = std::function<double(const FrequencyPoint&)>;

// Model errors at a sample count against the invariant instead of aborting the suite.
PointMetric guarded(PointMetric f) {
    return [f = std::move(f)](const FrequencyPoint& fp) {
        try {
            return f(fp);
        } catch (const Error&) {
            return kNaN;
        }
    };
}

class Suite {
public:
    explicit Suite(const VerifyConfig& cfg) : cfg_(cfg) {}

    void add(std::string name, std::size_t n, double worst, double threshold, Relation rel) {
        if (rel == Relation::at_most && threshold > 0.0 && cfg_.tolerance) threshold = *cfg_.tolerance;
        out_.push_back({std::move(name), n, worst, threshold, rel, holds(rel, worst, threshold)});
    }

    void max_over(std::string name, const std::vector<FrequencyPoint>& pts, double threshold,
                  PointMetric f, Relation rel = Relation::at_most) {
        add(std::move(name), pts.size(), sweep_max(pts, cfg_.workers, guarded(std::move(f))).worst,
            threshold, rel);
    }

    void min_over(std::string name, const std::vector<FrequencyPoint>& pts, double threshold,
                  PointMetric f) {
        add(std::move(name), pts.size(), sweep_min(pts, cfg_.workers, guarded(std::move(f))).worst,
            threshold, Relation::above);
    }

    std::vector<InvariantResult> take() { return std::move(out_); }

private:
    const VerifyConfig& cfg_;
    std::vector<InvariantResult> out_;
};

// Stability conditions as inequalities on v², F², c², independent of classify_case.
Regime regime_from_theorem(const BackgroundState& s, double tol) {
    const double v2 = s.v_r * s.v_r, f2 = s.f_sq(), c2 = s.c * s.c;
    const double aw = f2 * (2.0 * c2 + f2) / (4.0 * (f2 + c2));
    auto eq = [&](double a, double b) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); };
    if (eq(v2, f2 + 2.0 * c2)) return Regime::StableLoss3;
    if (eq(v2, aw) || eq(v2, f2)) return Regime::StableLoss2;
    if (v2 > 2.0 * c2 + f2 || v2 < f2) return Regime::StableLoss1;
    return Regime::Unstable;
}

// |ω at γ=0 (sign rule) − ω at γ = 1e-8| on ∂Σ, away from the branch points.
double boundary_consistency(const Model& m, double theta) {
    double worst = 0.0;
    for (int sgn : {1, -1}) {
        const FrequencyPoint b = boundary_point(m, theta, sgn);
        FrequencyPoint e = b;
        e.gamma = 1e-8;
        e = m.normalize(e);
        for (Side side : {Side::right, Side::left})
            worst = std::max(worst, std::abs(m.side_symbol(side, b).omega - m.side_symbol(side, e).omega));
    }
    return worst;
}

std::vector<double> boundary_thetas(const Model& m, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double hw = m.scan_half_width();
    const std::vector<double> bps = m.branch_points();
    std::vector<double> out;
    out.reserve(n);
    while (out.size() < n) {
        const double th = -hw + 2.0 * hw * unit_double(rng);
        const bool near = std::any_of(bps.begin(), bps.end(),
                                      [&](double b) { return std::abs(th - b) < 1e-3; });
        if (!near) out.push_back(th);
    }
    return out;
}

Vec2c unit_data(std::mt19937_64& rng) {
    Vec2c h;
    for (int k = 0; k < 2; ++k) h(k) = cplx(2.0 * unit_double(rng) - 1.0, 2.0 * unit_double(rng) - 1.0);
    return h / h.norm();
}

// Off-root ∂Σ location at least 0.1 from every root and branch point.
double off_root_theta(const Model& m, const std::vector<RootRecord>& roots) {
    std::vector<double> avoid = m.branch_points();
    for (const auto& r : roots)
        if (!r.interior) avoid.push_back(r.theta);
    const double hw = m.scan_half_width();
    for (double th = 0.05; th < hw; th += 0.05) {
        const bool clear = std::all_of(avoid.begin(), avoid.end(),
                                       [&](double a) { return std::abs(th - a) >= 0.1; });
        if (clear) return th;
    }
    return kNaN;
}

void root_invariants(Suite& suite, const Model& m) {
    const Verdict vd = stability_verdict(m);
    const bool labelled = vd.label.has_value();
    std::size_t tabled = 0;
    double slope_err = 0.0, lb_err = 0.0;
    for (const auto& r : vd.scan.roots) {
        if (r.interior || r.multiplicity_expected == 0) continue;
        ++tabled;
        slope_err = std::max(slope_err, std::abs(r.slope_fitted - r.multiplicity_expected));
        lb_err = std::max(lb_err, std::abs(r.lb_exponent_fitted - r.multiplicity_expected));
        if (std::isnan(r.slope_fitted)) slope_err = kNaN;
        if (std::isnan(r.lb_exponent_fitted)) lb_err = kNaN;
    }
    if (labelled) {
        suite.add("roots.case_table_mismatches", vd.scan.roots.size(),
                  static_cast<double>(vd.mismatches.size()), 0.0, Relation::at_most);
        if (tabled > 0) {
            suite.add("roots.slope_minus_multiplicity", tabled, slope_err, 0.1, Relation::at_most);
            suite.add("roots.lb_exponent_minus_multiplicity", tabled, lb_err, 0.15, Relation::at_most);
        }
        if (vd.witness_abs_delta)
            suite.add("roots.interior_witness_abs_delta", 1, *vd.witness_abs_delta,
                      1e-8 * std::max(1.0, vd.scan.delta_scale), Relation::at_most);
    }
    const double th = off_root_theta(m, vd.scan.roots);
    double j = kNaN;
    try {
        RootRecord probe;
        probe.theta = th;
        j = std::abs(lower_bound_scan(m, probe).lb_exponent_fitted);
    } catch (const Error&) {
    }
    suite.add("roots.lb_exponent_off_root", 1, j, 0.1, Relation::at_most);
}

void bvp_invariants(Suite& suite, const Model& m, const std::vector<FrequencyPoint>& pts,
                    std::uint64_t seed, int workers, const BackgroundState* elastic) {
    std::mt19937_64 rng(seed);
    std::vector<Vec2c> hs(pts.size());
    std::vector<Vec7c> gs(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        hs[i] = unit_data(rng);
        for (int k = 0; k < 7; ++k)
            gs[i](k) = cplx(2.0 * unit_double(rng) - 1.0, 2.0 * unit_double(rng) - 1.0);
    }
    struct Row {
        double boundary, ode, decay, algebraic, front;
    };
    const double xs[] = {0.0, 0.5, 1.0, 2.0};
    const auto rows = parallel_map(pts.size(), workers, [&](std::size_t i) {
        Row r{kNaN, kNaN, kNaN, kNaN, kNaN};
        try {
            const DecayingSolution sol = solve_decaying(m, pts[i], hs[i]);
            r.boundary = sol.boundary_residual;
            r.ode = 0.0;
            r.decay = 0.0;
            for (double x : xs) {
                r.ode = std::max(r.ode, ode_residual(m, sol, x));
                r.decay = std::max(r.decay, decay_excess(sol, x));
            }
            if (elastic) {
                const Vec14c w = reconstruct_characteristic(*elastic, sol.fp, sol.profile(0.0));
                r.algebraic = algebraic_residual(*elastic, sol.fp, w);
                const Vec8c wn = normal_components(w);
                const cplx phi = reconstruct_front(*elastic, sol.fp, wn, gs[i]);
                const BoundaryReduction br = assemble_boundary(*elastic, sol.fp);
                const cplx bg = (br.b_star.transpose() * gs[i])(0);
                const cplx lw = (br.ell.transpose() * wn)(0);
                r.front = std::abs(br.theta * phi + lw - bg) / (std::abs(bg) + std::abs(lw) + 1e-300);
            }
        } catch (const Error&) {
        }
        return r;
    });
    auto column = [&](double Row::*f) {
        std::vector<double> v(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) v[i] = rows[i].*f;
        return reduce_max(v).worst;
    };
    const std::size_t n = pts.size();
    suite.add("bvp.boundary_residual", n, column(&Row::boundary), 1e-10, Relation::at_most);
    suite.add("bvp.ode_residual", 4 * n, column(&Row::ode), 1e-8, Relation::at_most);
    suite.add("bvp.decay_envelope_excess", 4 * n, column(&Row::decay), 1e-12, Relation::at_most);
    if (elastic) {
        suite.add("bvp.algebraic_residual", n, column(&Row::algebraic), 1e-10, Relation::at_most);
        suite.add("bvp.front_identity", n, column(&Row::front), 1e-12, Relation::at_most);
    }
}

}  // namespace

std::vector<InvariantResult> run_invariants(const Model& m, const VerifyConfig& cfg) {
    Suite suite(cfg);
    const std::size_t n = std::max<std::size_t>(cfg.samples, 1);
    const std::size_t n_small = std::max<std::size_t>(n / 10, 1);
    const std::size_t n_bvp = std::max<std::size_t>(n / 100, 10);
    const double w = m.sigma_weight();
    const auto pts = sample_sigma(n, cfg.seed, w, cfg.gamma_min);
    const auto pts_big = sample_sigma(10 * n, cfg.seed + 1, w, cfg.gamma_min);
    const auto pts_small = sample_sigma(n_small, cfg.seed + 2, w, cfg.gamma_min);
    const auto pts_bvp = sample_sigma(n_bvp, cfg.seed + 3, w, cfg.gamma_min);

    if (m.det_factored(m.point(1.0, 0.0, 0.0)))
        suite.max_over("lopatinskii.factorization_relerr", pts, 1e-8,
                       [&](const FrequencyPoint& p) { return metric_factorization(m, p); });
    suite.max_over("symbol.eigen_residual", pts, 1e-10,
                   [&](const FrequencyPoint& p) { return metric_eigen_residual(m, p); });
    suite.min_over("symbol.e_minus_min_norm", pts_big, 0.0,
                   [&](const FrequencyPoint& p) { return metric_e_minus_min_norm(m, p); });
    suite.max_over("freq.dispersion_residual", pts, 1e-10,
                   [&](const FrequencyPoint& p) { return metric_dispersion(m, p); });
    suite.max_over("freq.max_re_omega", pts, 0.0,
                   [&](const FrequencyPoint& p) { return metric_max_re_omega(m, p); }, Relation::below);
    suite.max_over("modes.off_structure", pts, 1e-10,
                   [&](const FrequencyPoint& p) { return metric_triangularization(m, p); });
    suite.max_over("modes.diagonal_error", pts, 1e-10,
                   [&](const FrequencyPoint& p) { return metric_triangular_diagonal(m, p); });
    suite.max_over("modes.pivot_neighbourhood", pts_small, 1e-8,
                   [&](const FrequencyPoint& p) { return metric_pivot_neighbourhood(m, p, 1e-3); });

    // MHD has no closed sign rule on ∂Σ (its boundary ω is the ε-ray limit itself),
    // so the comparison is only meaningful for the elastic and Euler branches.
    if (m.kind() != ModelKind::Mhd) {
        const auto thetas = boundary_thetas(m, n_small, cfg.seed + 4);
        const auto vals = parallel_map(thetas.size(), cfg.workers, [&](std::size_t i) {
            try {
                return boundary_consistency(m, thetas[i]);
            } catch (const Error&) {
                return kNaN;
            }
        });
        suite.add("freq.boundary_consistency", thetas.size(), reduce_max(vals).worst, 1e-6,
                  Relation::at_most);
    }

    const auto* el = dynamic_cast<const ElasticModel*>(&m);
    const BackgroundState* s = el ? &el->state() : nullptr;
    if (s) {
        suite.max_over("symbol.closed_vs_elimination", pts_small, 1e-10,
                       [&](const FrequencyPoint& p) { return metric_symbol_crosscheck(*s, p); });
        suite.min_over("modes.prop41_min_abs", pts_big, 0.0, [&](const FrequencyPoint& p) {
            return std::min(metric_prop41(*s, Side::right, p), metric_prop41(*s, Side::left, p));
        });
        suite.min_over("symbol.theta_min_abs", pts_big, 0.0,
                       [&](const FrequencyPoint& p) { return metric_theta_abs(*s, p); });
        suite.max_over("symbol.qb_shape", pts, 1e-12,
                       [&](const FrequencyPoint& p) { return metric_qb_shape(*s, p); });
        suite.max_over("symbol.qm_displayed", pts, 1e-12,
                       [&](const FrequencyPoint& p) { return metric_qm_displayed(*s, p); });
        suite.max_over("freq.omega_homogeneity", pts, 1e-10,
                       [&](const FrequencyPoint& p) { return metric_omega_homogeneity(*s, p); });
        suite.max_over("symbol.a_homogeneity", pts_small, 1e-10, [&](const FrequencyPoint& p) {
            const Mat4c a = reduced_symbol_closed(*s, p).a_mat;
            double worst = 0.0;
            for (double k : {0.5, 2.0, 10.0})
                worst = std::max(worst, (reduced_symbol_closed(*s, p.scaled(k)).a_mat - k * a).norm() /
                                            (k * a.norm()));
            return worst;
        });
        {
            std::mt19937_64 rng(cfg.seed + 5);
            double resq = 0.0, max_x = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double p = 4.0 * unit_double(rng) - 2.0, q = 4.0 * unit_double(rng) - 2.0;
                const BranchValue b = branch_sqrt(p, q, 1);
                max_x = std::max(max_x, b.x);
                if (!b.at_cut) resq = std::max(resq, std::abs(b.value() * b.value() - cplx(p, q)) /
                                                         std::abs(cplx(p, q)));
            }
            suite.add("freq.branch_sqrt_resquare", n, resq, 1e-12, Relation::at_most);
            suite.add("freq.branch_sqrt_max_re", n, max_x, 0.0, Relation::at_most);
        }
        const CaseLabel label = *el->case_label();
        suite.add("background.regime_matches_theorem", 1,
                  regime_of(label.case_id) == regime_from_theorem(*s, kDefaultCaseTol) ? 0.0 : 1.0,
                  0.0, Relation::at_most);
        const DerivedConstants d = derived_constants(*s);
        suite.add("background.v2_sq_gap", 1, d.v2_sq - std::max(d.v1_sq, 0.0), 0.0, Relation::above);
    }
    if (auto mhd = dynamic_cast<const MhdModel*>(&m)) {
        // Special set τ = −i(v₂ ± c_A)η on each side: αm by the polynomial route vs the
        // analytic limit, and its size (E₋ = αm·(1, 1) there).
        double rel = 0.0, min_abs = INFINITY;
        std::size_t count = 0;
        const double v = mhd->params().v2_r, ca = mhd->params().c_a();
        for (double eta : {0.25, 0.5, -0.5, 1.0}) {
            for (double sgn : {1.0, -1.0}) {
                for (Side side : {Side::right, Side::left}) {
                    const double vs = side == Side::right ? v : -v;
                    const FrequencyPoint fp = m.point(0.0, -(vs + sgn * ca) * eta, eta);
                    const SideSymbol ss = m.side_symbol(side, fp);
                    const double exact = mhd->special_set_alpha_m(eta);
                    const double lam = mhd->params().lambda();
                    const double scale = std::abs(exact) + std::pow(lam, 3) * std::pow(eta, 4);
                    rel = std::max(rel, std::abs(ss.alpha_m - exact) / scale);
                    min_abs = std::min(min_abs, std::abs(exact));
                    ++count;
                }
            }
        }
        suite.add("models.mhd_special_set_alpha_m", count, rel, 1e-10, Relation::at_most);
        suite.add("models.mhd_special_set_e_minus_abs", count, min_abs, 0.0, Relation::above);
    }
    if (auto eu = dynamic_cast<const EulerModel*>(&m)) {
        const BackgroundState s0 = validate_state(eu->params().rho, eu->params().v_r, 0.0, 0.0,
                                                  eu->params().c, false);
        suite.max_over("models.euler_elastic_angle", pts, 1e-8, [&](const FrequencyPoint& p) {
            const EigenData a = eigen_data(s0, p), b = m.eigen_data(p);
            double worst = 0.0;
            // Chord between the unit vectors after removing the relative phase; avoids
            // the cancellation in sqrt(1 − cos²).
            for (auto [x, y] : {std::pair{a.e_minus_r, b.e_minus_r}, std::pair{a.e_minus_l, b.e_minus_l}}) {
                const Vec4c xu = x / x.norm(), yu = y / y.norm();
                const cplx d = xu.dot(yu);
                const cplx phase = std::abs(d) > 0.0 ? d / std::abs(d) : cplx(1.0);
                worst = std::max(worst, (xu * phase - yu).norm());
            }
            return worst;
        });
    }
    root_invariants(suite, m);
    bvp_invariants(suite, m, pts_bvp, cfg.seed + 6, cfg.workers, s);
    return suite.take();
}

}  // namespace vsheet
