#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "vsheet/lopatinskii.hpp"
#include "vsheet/sampling.hpp"

using namespace vsheet;
using vtest::err;

namespace {

std::vector<double> boundary_thetas(const RootScan& scan) {
    std::vector<double> out;
    for (const RootRecord& r : scan.roots)
        if (!r.interior) out.push_back(r.theta);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("anchor point tau = 1, eta = 0") {
    const ElasticModel m(vtest::state(2.0));
    const LopatinskiiEval e = lopatinskii_eval(m, m.point(1, 0, 0));
    Mat2c want;
    want << 2, 2, -2, 2;
    CHECK((e.mat - want).norm() < 1e-14);
    CHECK(err(e.det_direct, 8.0) < 1e-12);
    REQUIRE(e.det_factored);
    CHECK(err(*e.det_factored, 8.0) < 1e-12);
}

TEST_CASE("direct and factored determinants agree on random samples") {
    for (double v : {vtest::kCase1, vtest::kCase2, vtest::kCase6}) {
        const ElasticModel m(vtest::state(v, 0.7, 0.4, 1.1));
        for (const FrequencyPoint& fp : sample_sigma(2000, 21, m.sigma_weight(), 1e-3)) {
            const LopatinskiiEval e = lopatinskii_eval(m, fp);
            REQUIRE(e.det_factored);
            CHECK(err(e.det_direct, *e.det_factored) <= 1e-10 * std::max(1.0, std::abs(*e.det_factored)));
        }
    }
}

TEST_CASE("2x2 singular values against an SVD oracle") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        Mat2c a;
        for (int k = 0; k < 4; ++k) a.data()[k] = cplx(2 * unit_double(rng) - 1, 2 * unit_double(rng) - 1);
        if (i % 50 == 0) a.col(1) = a.col(0) * cplx(0.3, -1.2);  // rank one
        const SingularValues2 sv = singular_values_2x2(a);
        const Eigen::JacobiSVD<Mat2c> svd(a);
        CHECK(sv.max == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
        CHECK(std::abs(sv.min - svd.singularValues()(1)) <= 1e-12 * sv.max);
    }
}

TEST_CASE("boundary and interior points") {
    const ElasticModel m(vtest::state(2.0));
    const FrequencyPoint b = boundary_point(m, 0.7);
    CHECK(b.gamma == 0.0);
    CHECK(b.on_sigma());
    CHECK(b.delta == doctest::Approx(0.7 * b.eta));
    const FrequencyPoint r = real_tau_point(m, 0.7, -1);
    CHECK(r.delta == 0.0);
    CHECK(r.eta < 0.0);
    CHECK(r.gamma == doctest::Approx(-0.7 * r.eta));
    const FrequencyPoint a = approach_point(m, 0.7, 1e-4);
    CHECK(a.on_sigma());
    CHECK(std::abs(a.delta / a.eta - 0.7) < 1e-12);
}

TEST_CASE("Case 1 roots") {
    const ElasticModel m(vtest::state(vtest::kCase1));
    const RootScan scan = find_roots(m, 1, {});
    const std::vector<double> got = boundary_thetas(scan);
    const double v1 = std::sqrt(6 - std::sqrt(33.0));
    const std::vector<double> want{-2.0, -v1, 0.0, v1, 2.0};
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-7);
    CHECK(v1 == doctest::Approx(0.505408).epsilon(1e-6));
    CHECK(scan.unexpected.empty());
    CHECK(scan.missing.empty());
}

TEST_CASE("Case 3 roots are exactly plus and minus v") {
    const ElasticModel m(vtest::state(vtest::kCase3));
    const std::vector<double> got = boundary_thetas(find_roots(m, 1, {}));
    REQUIRE(got.size() == 2);
    CHECK(std::abs(got[0] + vtest::kCase3) < 1e-7);
    CHECK(std::abs(got[1] - vtest::kCase3) < 1e-7);
}

TEST_CASE("root sets are symmetric in eta sign") {
    const ElasticModel m(vtest::state(vtest::kCase2));
    const std::vector<double> up = boundary_thetas(find_roots(m, 1, {}));
    const std::vector<double> down = boundary_thetas(find_roots(m, -1, {}));
    REQUIRE(up.size() == down.size());
    for (std::size_t i = 0; i < up.size(); ++i) CHECK(std::abs(up[i] - down[i]) < 1e-7);
}

TEST_CASE("Case 6 has a root with real tau") {
    const ElasticModel m(vtest::state(vtest::kCase6));
    const double theta = std::sqrt(std::sqrt(19.0) - 4.25);
    const cplx d = lopatinskii_det(m, real_tau_point(m, theta));
    CHECK(std::abs(d) <= 1e-8);
    CHECK(std::abs(lopatinskii_det(m, real_tau_point(m, theta * 1.1))) > 1e-4);
    const Verdict v = stability_verdict(m);
    CHECK(v.confident());
    REQUIRE(v.witness_abs_delta);
    CHECK(*v.witness_abs_delta <= 1e-8);
    REQUIRE(v.label);
    CHECK(v.label->regime == Regime::Unstable);
}

TEST_CASE("multiplicity slopes") {
    struct Row {
        double v, theta;
        int mult;
    };
    const Row rows[] = {{vtest::kCase1, 2.0, 1},
                        {vtest::kCase1, 0.0, 1},
                        {vtest::kCase3, vtest::kCase3, 2},
                        {vtest::kCase4, 0.0, 3},
                        {vtest::kCase4, std::sqrt(3.0), 1},
                        {vtest::kCase5, 0.0, 2}};
    for (const Row& r : rows) {
        const ElasticModel m(vtest::state(r.v));
        RootRecord rec;
        rec.theta = r.theta;
        rec = estimate_multiplicity(m, rec);
        CHECK_MESSAGE(std::abs(rec.slope_fitted - r.mult) <= 0.1, "v=" << r.v << " theta=" << r.theta);
        rec = lower_bound_scan(m, rec);
        CHECK(std::abs(rec.lb_exponent_fitted - r.mult) <= 0.15);
    }
}

TEST_CASE("verdicts are confident for all six representatives") {
    for (double v : {vtest::kCase1, vtest::kCase2, vtest::kCase3, vtest::kCase4, vtest::kCase5,
                     vtest::kCase6, vtest::kCoincidence}) {
        const Verdict verdict = stability_verdict(ElasticModel(vtest::state(v)));
        CHECK_MESSAGE(verdict.confident(), "v=" << v);
    }
}
