#include <doctest.h>

#include "support.hpp"
#include "vsheet/errors.hpp"
#include "vsheet/modes.hpp"
#include "vsheet/sampling.hpp"

using namespace vsheet;
using vtest::err;

TEST_CASE("nondegeneracy at tau = 1, eta = 0 and nonvanishing on samples") {
    const BackgroundState s = vtest::state(2.0);
    CHECK(err(nondegeneracy_value(s, Side::right, {1, 0, 0, 2.0}), -2.0) < 1e-15);
    for (double v : {vtest::kCase1, vtest::kCase3, vtest::kCase6}) {
        const BackgroundState st = vtest::state(v);
        for (const FrequencyPoint& fp : sample_sigma(5000, 31, v, 1e-3))
            for (Side side : {Side::right, Side::left})
                CHECK(std::abs(nondegeneracy_value(st, side, fp)) > 0.0);
    }
}

TEST_CASE("separation basis at tau = 1, eta = 0") {
    const ElasticModel m(vtest::state(2.0));
    const SeparationBasis b = separation_basis(m, m.point(1, 0, 0));
    CHECK(b.pivot_r == Pivot::n_branch);
    CHECK(b.pivot_l == Pivot::n_branch);
    Mat4c want;
    want.col(0) = Vec4c(0, 2, 0, 0);
    want.col(1) = Vec4c(1, 0, 0, 0);
    want.col(2) = Vec4c(0, 0, 2, 0);
    want.col(3) = Vec4c(0, 0, 0, 1);
    CHECK((b.t_mat - want).norm() == 0.0);
    CHECK(std::abs(b.z_r) == 0.0);
    CHECK(std::abs(b.z_l) == 0.0);
    const Mat4c tat = triangularize(m, m.point(1, 0, 0), b);
    const Vec4c d(-1, 1, -1, 1);
    CHECK((tat - Mat4c(d.asDiagonal())).norm() < 1e-14);
}

TEST_CASE("generic samples use the m-branch coupling -1/alpha") {
    const ElasticModel m(vtest::state(1.5, 0.8, 0.6, 1.0));
    const FrequencyPoint fp = normalize_to_hemisphere(0.3, 0.4, 0.8, 1.5);
    const SeparationBasis b = separation_basis(m, fp);
    const SideSymbol r = m.side_symbol(Side::right, fp);
    if (b.pivot_r == Pivot::m_branch) CHECK(err(b.z_r, -1.0 / r.alpha) < 1e-14);
    const Triangularization t = triangularization_residuals(m, fp, b);
    CHECK(t.off_structure < 1e-12);
    CHECK(t.diag_error < 1e-12);
    CHECK(t.z_error < 1e-12);
}

TEST_CASE("upper block-triangular structure on random samples, all cases") {
    for (double v : {vtest::kCase1, vtest::kCase2, vtest::kCase3, vtest::kCase4, vtest::kCase5,
                     vtest::kCase6}) {
        const ElasticModel m(vtest::state(v));
        for (const FrequencyPoint& fp : sample_sigma(1000, 32, v, 1e-3)) {
            const SeparationBasis b = separation_basis(m, fp);
            const Triangularization t = triangularization_residuals(m, fp, b);
            CHECK(t.off_structure <= 1e-10);
            CHECK(t.diag_error <= 1e-10);
            CHECK(t.z_error <= 1e-10);
        }
    }
}

TEST_CASE("frozen pivots stay valid on a neighbourhood") {
    const ElasticModel m(vtest::state(2.0));
    const FrequencyPoint fp0 = normalize_to_hemisphere(0.5, 0.5, 0.5, 2.0);
    const SeparationBasis b = separation_basis(m, fp0);
    const FrequencyPoint near = normalize_to_hemisphere(0.51, 0.49, 0.5, 2.0);
    CHECK_NOTHROW(triangularize(m, near, b));
}

TEST_CASE("pivot names") {
    CHECK(to_string(Pivot::m_branch) == "m_branch");
    CHECK(to_string(Pivot::n_branch) == "n_branch");
}
