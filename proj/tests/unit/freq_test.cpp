#include <doctest.h>

#include "support.hpp"
#include "vsheet/errors.hpp"
#include "vsheet/freq.hpp"
#include "vsheet/sampling.hpp"

using namespace vsheet;
using vtest::err;

TEST_CASE("normalize_to_hemisphere lands on sigma along the same ray") {
    const FrequencyPoint a = normalize_to_hemisphere(1, 0, 0, 2);
    CHECK(a.gamma == doctest::Approx(1.0));
    const FrequencyPoint b = normalize_to_hemisphere(2, 0, 0, 2);
    CHECK(b.gamma == doctest::Approx(1.0));
    const FrequencyPoint c = normalize_to_hemisphere(0, 0, 1, 2);
    CHECK(c.eta == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.on_sigma());

    const FrequencyPoint d = normalize_to_hemisphere(0.3, -1.7, 2.2, 1.5);
    CHECK(d.on_sigma(1e-12));
    const double k = d.gamma / 0.3;
    CHECK(k > 0.0);
    CHECK(d.delta == doctest::Approx(-1.7 * k).epsilon(1e-14));
    CHECK(d.eta == doctest::Approx(2.2 * k).epsilon(1e-14));
}

TEST_CASE("normalize_to_hemisphere rejects zero and negative gamma") {
    auto kind_of = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return static_cast<int>(e.kind());
        }
        return -1;
    };
    CHECK(kind_of([] { normalize_to_hemisphere(0, 0, 0, 1); }) == static_cast<int>(ErrorKind::ZeroFrequency));
    CHECK(kind_of([] { normalize_to_hemisphere(-0.1, 0, 1, 1); }) == static_cast<int>(ErrorKind::OutsideCone));
}

TEST_CASE("branch_sqrt frozen values and re-squaring") {
    const BranchValue a = branch_sqrt(1, 0);
    CHECK(a.x == doctest::Approx(-1.0));
    CHECK(a.y == doctest::Approx(0.0));

    // (−1 − i)² = 2i
    const BranchValue b = branch_sqrt(0, 2);
    CHECK(err(b.value(), {-1, -1}) < 1e-15);

    const BranchValue c = branch_sqrt(-0.125, 0.866025);
    CHECK(err(c.value(), {-0.612372, -0.707107}) < 1e-6);
    CHECK(err(c.value() * c.value(), {-0.125, 0.866025}) < 1e-15);

    CHECK(branch_sqrt(0, 0).value() == cplx(0, 0));
}

TEST_CASE("branch_sqrt keeps x <= 0 and re-squares off the cut") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const double p = 6 * unit_double(rng) - 3, q = 6 * unit_double(rng) - 3;
        const BranchValue b = branch_sqrt(p, q);
        CHECK(b.x <= 0.0);
        CHECK(std::abs(b.value() * b.value() - cplx(p, q)) <= 1e-12 * std::abs(cplx(p, q)));
    }
}

TEST_CASE("branch_sqrt on the cut needs a sign hint") {
    CHECK_THROWS_AS(branch_sqrt(-4, 0), Error);
    const BranchValue up = branch_sqrt(-4, 0, 1);
    CHECK(up.at_cut);
    CHECK(up.x == 0.0);
    CHECK(up.y == doctest::Approx(-2.0));
    CHECK(branch_sqrt(-4, 0, -1).y == doctest::Approx(2.0));
}

TEST_CASE("omega frozen values") {
    const BackgroundState s = vtest::state(2.0);
    CHECK(err(omega(s, Side::right, {1, 0, 0, 2}), {-1, 0}) < 1e-15);
    const cplx w = omega(s, Side::right, {0.5, 0, 0.433013, 2});
    CHECK(err(w, {-0.612372, -0.707107}) < 1e-6);
    // Oracle: ω² = ((τ+ivη)² + F²η²)/c² + η², evaluated by hand here.
    const cplx tau(0.5, 0), sv = tau + cplx(0, 2 * 0.433013);
    const cplx rhs = sv * sv + 0.433013 * 0.433013 + 0.433013 * 0.433013;
    CHECK(err(w * w, rhs) < 1e-14);
}

TEST_CASE("omega with F = 0 is the Euler branch") {
    const BackgroundState s = vtest::state(2.0, 0.0, 0.0, 1.3);
    for (const FrequencyPoint& fp : sample_sigma(200, 5, 2.0, 1e-3)) {
        const cplx sv = fp.tau() + cplx(0, 2.0 * fp.eta);
        const cplx rhs = sv * sv / (1.3 * 1.3) + fp.eta * fp.eta;
        const cplx w = omega(s, Side::right, fp);
        CHECK(std::abs(w * w - rhs) <= 1e-12 * (1 + std::abs(rhs)));
        CHECK(w.real() < 0.0);
    }
}

TEST_CASE("omega is degree-1 homogeneous and decaying for gamma > 0") {
    const BackgroundState s = vtest::state(1.5, 0.7, -0.4, 0.9);
    for (const FrequencyPoint& fp : sample_sigma(500, 9, 1.5, 1e-6)) {
        for (Side side : {Side::right, Side::left}) {
            const cplx w = omega(s, side, fp);
            CHECK(w.real() < 0.0);
            for (double k : {0.5, 2.0, 10.0})
                CHECK(std::abs(omega(s, side, fp.scaled(k)) - k * w) <= 1e-10 * std::abs(k * w));
        }
    }
}

TEST_CASE("omega on the boundary is the limit from gamma = 1e-8") {
    const BackgroundState s = vtest::state(2.0);
    // ∂Σ points τ = iθη away from the branch points; on the right side ω² < 0 (the cut)
    // except at θ = −3.3, so both the sign rule and the plain branch are covered.
    for (double theta : {-5.1, -3.3, 0.9, 1.7, 4.4}) {
        const double eta = 1.0 / std::sqrt(theta * theta + 4.0);
        const FrequencyPoint b{0.0, theta * eta, eta, 2.0};
        const FrequencyPoint e = normalize_to_hemisphere(1e-8, theta * eta, eta, 2.0);
        for (Side side : {Side::right, Side::left})
            CHECK(std::abs(omega(s, side, b) - omega(s, side, e)) <= 1e-6);
    }
}

TEST_CASE("sigma samples respect the gamma band and are reproducible") {
    const auto a = sample_sigma(1000, 3, 2.0, 1e-3);
    const auto b = sample_sigma(1000, 3, 2.0, 1e-3);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].gamma >= 1e-3 * (1 - 1e-12));
        CHECK(a[i].on_sigma());
        CHECK(a[i].gamma == b[i].gamma);
        CHECK(a[i].eta == b[i].eta);
    }
}
