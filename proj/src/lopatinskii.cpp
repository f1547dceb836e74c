#include "vsheet/lopatinskii.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "vsheet/errors.hpp"
#include "vsheet/kernels.hpp"

namespace vsheet {

SingularValues2 singular_values_2x2(const Mat2c& m) {
    const double s = m.squaredNorm();
    const double d = std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    const double disc = std::max(0.0, s * s - 4.0 * d * d);
    const double smax = std::sqrt(0.5 * (s + std::sqrt(disc)));
    return {smax > 0.0 ? d / smax : 0.0, smax};
}

LopatinskiiEval lopatinskii_eval(const Model& m, const FrequencyPoint& raw) {
    LopatinskiiEval out;
    out.fp = m.normalize(raw);
    const EigenData e = m.eigen_data(out.fp);
    Eigen::Matrix<cplx, 4, 2> cols;
    cols.col(0) = e.e_minus_r;
    cols.col(1) = e.e_minus_l;
    out.mat = m.beta(out.fp) * cols;
    out.det_direct = out.mat(0, 0) * out.mat(1, 1) - out.mat(0, 1) * out.mat(1, 0);
    out.det_factored = m.det_factored(out.fp);
    const SingularValues2 sv = singular_values_2x2(out.mat);
    out.sigma_min = sv.min;
    out.sigma_max = sv.max;
    out.at_cut = e.at_cut;
    return out;
}

cplx lopatinskii_det(const Model& m, const FrequencyPoint& fp) {
    return lopatinskii_eval(m, fp).det_direct;
}

FrequencyPoint approach_point(const Model& m, double theta, double gamma, int eta_sign) {
    const double w = m.sigma_weight();
    const double eta0 = (eta_sign < 0 ? -1.0 : 1.0) / std::sqrt(theta * theta + w * w);
    return m.normalize(m.point(gamma, theta * eta0, eta0));
}

FrequencyPoint boundary_point(const Model& m, double theta, int eta_sign) {
    const double w = m.sigma_weight();
    const double eta0 = (eta_sign < 0 ? -1.0 : 1.0) / std::sqrt(theta * theta + w * w);
    return m.point(0.0, theta * eta0, eta0);
}

FrequencyPoint real_tau_point(const Model& m, double theta, int eta_sign) {
    const double w = m.sigma_weight();
    const double eta0 = 1.0 / std::sqrt(theta * theta + w * w);
    return m.point(theta * eta0, 0.0, (eta_sign < 0 ? -1.0 : 1.0) * eta0);
}

namespace {

using ScalarFn = std::function<cplx(double)>;

double golden_min(const ScalarFn& f, double lo, double hi, double tol) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = std::abs(f(x1)), f2 = std::abs(f(x2));
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = std::abs(f(x1));
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = std::abs(f(x2));
        }
    }
    return 0.5 * (lo + hi);
}

struct Polish {
    double theta;
    int cluster;
    bool ok;
};

// Bracketing |Δ| stalls at a distance ~ε^(1/k) from a k-fold root. Instead
// interpolate Δ on Chebyshev nodes in [guess − r, guess + r], where Δ is
// analytic, and take the centroid of the interpolant's root cluster near the
// guess; the centroid of a perturbed k-fold root is accurate to O(ε).
Polish polish_root(const ScalarFn& f, double guess, double r) {
    constexpr int n = 12;
    Eigen::Matrix<cplx, n, n> vand;
    Eigen::Matrix<cplx, n, 1> vals;
    for (int j = 0; j < n; ++j) {
        const double u = std::cos(std::numbers::pi * (j + 0.5) / n);
        vals(j) = f(guess + r * u);
        double p = 1.0;
        for (int k = 0; k < n; ++k) {
            vand(j, k) = p;
            p *= u;
        }
    }
    Eigen::Matrix<cplx, n, 1> coef = vand.partialPivLu().solve(vals);
    const double cmax = coef.cwiseAbs().maxCoeff();
    int deg = n - 1;
    while (deg > 0 && std::abs(coef(deg)) <= 1e-13 * cmax) --deg;
    if (deg < 1) return {guess, 0, false};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coef(i) / coef(deg);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) return {guess, 0, false};
    cplx sum = 0.0;
    int cnt = 0;
    for (int i = 0; i < deg; ++i) {
        const cplx u = es.eigenvalues()(i);
        if (std::abs(u) < 0.5) {
            sum += u;
            ++cnt;
        }
    }
    if (cnt == 0) return {guess, 0, false};
    const double centre = guess + r * (sum / static_cast<double>(cnt)).real();
    return {centre, cnt, std::abs(centre - guess) <= 0.5 * r};
}

struct Minimum {
    double theta;
    double abs_delta;
    int cluster;
};

std::vector<Minimum> scan_minima(const ScalarFn& f, double lo, double hi, int samples, int workers,
                                 double tol, const std::vector<double>& branch_pts,
                                 double& max_abs) {
    const int n = std::max(samples, 3);
    const auto grid = parallel_map(static_cast<std::size_t>(n), workers, [&](std::size_t i) {
        const double th = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
        return std::abs(f(th));
    });
    max_abs = 0.0;
    for (double a : grid)
        if (std::isfinite(a)) max_abs = std::max(max_abs, a);
    auto theta_at = [&](int i) { return lo + (hi - lo) * static_cast<double>(i) / (n - 1); };

    std::vector<Minimum> out;
    for (int i = 1; i + 1 < n; ++i) {
        if (!(grid[i] < grid[i - 1] && grid[i] <= grid[i + 1])) continue;
        double th = golden_min(f, theta_at(i - 1), theta_at(i + 1), tol);
        double val = std::abs(f(th));
        int cluster = 0;
        double dist = 1e-2;
        for (double b : branch_pts) dist = std::min(dist, 0.5 * std::abs(th - b));
        if (dist >= 1e-5) {
            const Polish p = polish_root(f, th, dist);
            if (p.ok) {
                const double pv = std::abs(f(p.theta));
                if (pv <= std::max(val, 1e-300) * 1e3) {
                    th = p.theta;
                    val = pv;
                    cluster = p.cluster;
                }
            }
        }
        out.push_back({th, val, cluster});
    }
    return out;
}

}  // namespace

RootScan find_roots(const Model& m, int eta_sign, const ScanConfig& cfg, bool strict) {
    RootScan scan;
    const double L = cfg.half_width > 0.0 ? cfg.half_width : m.scan_half_width();
    const auto cands = m.root_candidates();
    const bool has_table = !cands.empty();

    auto collect = [&](const std::vector<Minimum>& mins, double scale, bool interior) {
        for (const Minimum& mn : mins) {
            if (!(mn.abs_delta <= cfg.accept_rel * std::max(1.0, scale))) {
                ++scan.rejected_minima;
                continue;
            }
            RootRecord rec;
            rec.theta = mn.theta;
            rec.interior = interior;
            rec.abs_delta = mn.abs_delta;
            rec.cluster_size = mn.cluster;
            for (const RootCandidate& c : cands) {
                if (c.interior != interior || std::abs(c.theta - mn.theta) > cfg.match_tol) continue;
                rec.matched = true;
                rec.candidate = c.theta;
                rec.multiplicity_expected = c.multiplicity;
            }
            if (!has_table) {
                scan.roots.push_back(rec);
                continue;
            }
            if (!rec.matched) {
                scan.unexpected.push_back(rec);
                continue;
            }
            // Two minima collapsing onto one candidate: keep the deeper.
            auto dup = std::find_if(scan.roots.begin(), scan.roots.end(), [&](const RootRecord& r) {
                return r.interior == interior && r.candidate == rec.candidate;
            });
            if (dup == scan.roots.end())
                scan.roots.push_back(rec);
            else if (rec.abs_delta < dup->abs_delta)
                *dup = rec;
        }
    };

    const ScalarFn on_boundary = [&](double th) {
        return lopatinskii_det(m, boundary_point(m, th, eta_sign));
    };
    double bscale = 0.0;
    const auto bmins = scan_minima(on_boundary, -L, L, cfg.samples, cfg.workers, cfg.theta_tol,
                                   m.branch_points(), bscale);
    scan.delta_scale = bscale;
    collect(bmins, bscale, false);

    if (cfg.interior) {
        const ScalarFn on_real = [&](double th) {
            return lopatinskii_det(m, real_tau_point(m, th, eta_sign));
        };
        double iscale = 0.0;
        const auto imins = scan_minima(on_real, 1e-3 * L, L, cfg.samples, cfg.workers,
                                       cfg.theta_tol, {}, iscale);
        collect(imins, std::max(iscale, bscale), true);
    }

    std::sort(scan.roots.begin(), scan.roots.end(), [](const RootRecord& a, const RootRecord& b) {
        return a.interior != b.interior ? !a.interior : a.theta < b.theta;
    });
    for (const RootCandidate& c : cands) {
        if (c.multiplicity == 0) continue;
        const bool found = std::any_of(scan.roots.begin(), scan.roots.end(), [&](const RootRecord& r) {
            return r.interior == c.interior && r.candidate == c.theta;
        });
        if (!found) scan.missing.push_back(c);
    }
    if (strict && !scan.unexpected.empty()) {
        std::ostringstream os;
        os << scan.unexpected.size() << " unmatched root(s), first at theta = "
           << scan.unexpected.front().theta;
        throw Error(ErrorKind::UnexpectedRoot, os.str());
    }
    return scan;
}

RootRecord estimate_multiplicity(const Model& m, RootRecord root, int eta_sign, const FitWindow& w) {
    const auto eps = log_space(w.lo, w.hi, w.points);
    std::vector<double> ys(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i)
        ys[i] = std::abs(lopatinskii_det(m, approach_point(m, root.theta, eps[i], eta_sign)));
    const LogLogFit f = fit_loglog(eps, ys, w.floor, w.max_residual);
    root.slope_fitted = f.slope;
    root.slope_residual = f.residual;
    return root;
}

RootRecord lower_bound_scan(const Model& m, RootRecord root, int eta_sign, const FitWindow& w) {
    const auto eps = log_space(w.lo, w.hi, w.points);
    std::vector<double> gs(eps.size()), ys(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) {
        const LopatinskiiEval ev = lopatinskii_eval(m, approach_point(m, root.theta, eps[i], eta_sign));
        gs[i] = ev.fp.gamma;
        ys[i] = ev.sigma_min;
    }
    const LogLogFit f = fit_loglog(gs, ys, w.floor, w.max_residual);
    root.lb_exponent_fitted = f.slope;
    root.kappa_fitted = std::exp(f.intercept);
    return root;
}

Verdict stability_verdict(const Model& m, const VerdictConfig& cfg) {
    Verdict v;
    v.label = m.case_label();
    v.scan = find_roots(m, 1, cfg.scan);
    auto fmt = [](double x) {
        std::ostringstream os;
        os.precision(10);
        os << x;
        return os.str();
    };
    for (RootRecord& r : v.scan.roots) {
        if (r.interior) continue;
        try {
            r = estimate_multiplicity(m, r, 1, cfg.window);
            r = lower_bound_scan(m, r, 1, cfg.window);
        } catch (const Error& e) {
            if (r.multiplicity_expected > 0)
                v.mismatches.push_back("theta=" + fmt(r.theta) + ": " + e.what());
            continue;
        }
        if (r.multiplicity_expected == 0) continue;
        if (!(std::abs(r.slope_fitted - r.multiplicity_expected) <= cfg.slope_tol))
            v.mismatches.push_back("theta=" + fmt(r.theta) + ": slope " + fmt(r.slope_fitted) +
                                   " vs multiplicity " + std::to_string(r.multiplicity_expected));
        if (!(std::abs(r.lb_exponent_fitted - r.multiplicity_expected) <= cfg.exponent_tol))
            v.mismatches.push_back("theta=" + fmt(r.theta) + ": lower-bound exponent " +
                                   fmt(r.lb_exponent_fitted) + " vs multiplicity " +
                                   std::to_string(r.multiplicity_expected));
    }
    for (const RootRecord& r : v.scan.unexpected)
        v.mismatches.push_back(std::string("unexpected ") + (r.interior ? "interior" : "boundary") +
                               " root at theta=" + fmt(r.theta));
    for (const RootCandidate& c : v.scan.missing)
        v.mismatches.push_back(std::string("missing ") + (c.interior ? "interior" : "boundary") +
                               " root at theta=" + fmt(c.theta));
    for (const RootCandidate& c : m.root_candidates()) {
        if (!c.interior) continue;
        const double d = std::abs(lopatinskii_det(m, real_tau_point(m, c.theta)));
        v.witness_abs_delta = d;
        if (!(d <= cfg.scan.accept_rel * std::max(1.0, v.scan.delta_scale)))
            v.mismatches.push_back("interior witness |Delta|=" + fmt(d) + " above threshold");
    }
    return v;
}

}  // namespace vsheet
