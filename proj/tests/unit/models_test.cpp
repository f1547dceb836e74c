#include <doctest.h>

#include "support.hpp"
#include "vsheet/errors.hpp"
#include "vsheet/lopatinskii.hpp"
#include "vsheet/sampling.hpp"

using namespace vsheet;
using vtest::err;

TEST_CASE("Euler E- at tau = 1, eta = 0") {
    const EulerModel m({1.0, 2.0, 1.0});
    const EigenData d = m.eigen_data(m.point(1, 0, 0));
    CHECK((d.e_minus_r - Vec4c(0, 2, 0, 0)).norm() < 1e-15);
    CHECK(err(d.omega_r, -1.0) < 1e-15);
}

TEST_CASE("Euler is the F = 0 elastic model up to the scaling of E-") {
    const EulerModel eu({1.0, 2.0, 1.0});
    const ElasticModel el(validate_state(1.0, 2.0, 0.0, 0.0, 1.0, false));
    for (const FrequencyPoint& fp : sample_sigma(2000, 51, 2.0, 1e-3)) {
        const Mat4c a = eu.reduced_symbol(fp), b = el.reduced_symbol(fp);
        CHECK((a - b).norm() <= 1e-10 * b.norm());
        const EigenData x = eu.eigen_data(fp), y = el.eigen_data(fp);
        for (auto [p, q] : {std::pair{x.e_minus_r, y.e_minus_r}, std::pair{x.e_minus_l, y.e_minus_l}}) {
            // |⟨p, q⟩| = ‖p‖‖q‖ exactly when the lines agree.
            CHECK(std::abs(std::abs(p.dot(q)) - p.norm() * q.norm()) <= 1e-10 * p.norm() * q.norm());
        }
    }
}

TEST_CASE("Euler roots at v = 2") {
    const EulerModel m({1.0, 2.0, 1.0});
    const Verdict v = stability_verdict(m);
    CHECK(v.confident());
    std::vector<double> got;
    for (const RootRecord& r : v.scan.roots)
        if (!r.interior) got.push_back(r.theta);
    std::sort(got.begin(), got.end());
    REQUIRE(got.size() == 3);
    CHECK(got[1] == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(std::abs(got[2] - 0.936426) < 1e-6);
    CHECK(std::abs(got[0] + got[2]) < 1e-7);
}

TEST_CASE("elastic roots converge to the Euler roots as F goes to 0") {
    const EulerModel eu({1.0, 2.0, 1.0});
    double target = 0.0;
    for (const RootRecord& r : find_roots(eu, 1, {}).roots) target = std::max(target, r.theta);
    CHECK(target == doctest::Approx(std::sqrt(5 - std::sqrt(17.0))).epsilon(1e-9));
    std::vector<double> fs, ds;
    for (double f2 : {1e-2, 1e-4, 1e-6}) {
        const ElasticModel el(vtest::state(2.0, std::sqrt(f2), 0.0, 1.0));
        double best = INFINITY;
        for (const RootRecord& r : find_roots(el, 1, {}).roots)
            best = std::min(best, std::abs(r.theta - target));
        fs.push_back(f2);
        ds.push_back(best);
    }
    const LogLogFit fit = fit_loglog(fs, ds, 1e-300, 0.5);
    CHECK(std::abs(fit.slope - 1.0) <= 0.1);
}

TEST_CASE("MHD symbol at c = c_A = 1, tau = 1, eta = 0") {
    const MhdModel m({1.0, 1.0, 1.0, 1.0});
    cplx n, mm;
    m.symbol_entries(Side::right, m.point(1, 0, 0), n, mm);
    CHECK(std::abs(mm) < 1e-15);
    CHECK(err(n, 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(err(m.side_symbol(Side::right, m.point(1, 0, 0)).omega, -1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("MHD dispersion and with c_A = 0 it is Euler") {
    const MhdModel mhd({1.0, 1.0, 0.5, 1.0});
    for (const FrequencyPoint& fp : sample_sigma(2000, 52, 1.0, 1e-3)) {
        for (Side side : {Side::right, Side::left}) {
            cplx n, mm;
            try {
                mhd.symbol_entries(side, fp, n, mm);
            } catch (const Error&) {
                continue;
            }
            const cplx w = mhd.side_symbol(side, fp).omega;
            CHECK(std::abs(w * w - (n * n - mm * mm)) <= 1e-10 * (1 + std::abs(n * n) + std::abs(mm * mm)));
            CHECK(w.real() <= 0.0);
        }
    }
    const MhdModel flat({1.0, 2.0, 0.0, 1.0});
    const EulerModel eu({1.0, 2.0, 1.0});
    for (const FrequencyPoint& fp : sample_sigma(500, 53, 2.0, 1e-3)) {
        const Mat4c a = flat.reduced_symbol(fp), b = eu.reduced_symbol(fp);
        CHECK((a - b).norm() <= 1e-10 * b.norm());
    }
}

TEST_CASE("MHD special set: polynomial alpha_m equals its analytic limit") {
    const MhdModel m({1.0, 1.0, 0.5, 1.0});
    const double v = 1.0, ca = m.params().c_a();
    CHECK(ca == doctest::Approx(0.5));
    for (double eta : {0.25, 0.5, 1.0}) {
        const double exact = m.special_set_alpha_m(eta);
        CHECK(std::abs(exact) > 0.0);
        for (double sgn : {1.0, -1.0}) {
            const FrequencyPoint fp = m.point(0.0, -(v + sgn * ca) * eta, eta);
            const SideSymbol s = m.side_symbol(Side::right, fp);
            CHECK(std::abs(s.alpha_m - exact) <= 1e-10 * std::abs(exact));
            CHECK(std::abs(s.omega) < 1e-7);
        }
    }
}

TEST_CASE("model names and cloning") {
    for (ModelKind k : {ModelKind::Elastic, ModelKind::Euler, ModelKind::Mhd})
        CHECK(parse_model_kind(to_string(k)) == k);
    const ElasticModel m(vtest::state(2.0));
    const auto c = clone_model(m);
    const FrequencyPoint fp = normalize_to_hemisphere(0.2, 0.3, 0.4, 2.0);
    CHECK(err(lopatinskii_det(*c, fp), lopatinskii_det(m, fp)) == 0.0);
}
