#include <doctest.h>

#include <cstring>

#include "support.hpp"
#include "vsheet/errors.hpp"
#include "vsheet/kernels.hpp"
#include "vsheet/lopatinskii.hpp"
#include "vsheet/sampling.hpp"

namespace {
bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }
}  // namespace

using namespace vsheet;

TEST_CASE("parallel map equals the serial reference bit for bit") {
    const ElasticModel m(vtest::state(vtest::kCase6));
    const auto pts = sample_sigma(3000, 61, m.sigma_weight(), 1e-3);
    auto f = [&](std::size_t i) { return metric_triangularization(m, pts[i]); };
    const auto a = serial_map(pts.size(), f);
    for (int w : {2, 3, 8}) {
        const auto b = parallel_map(pts.size(), w, f);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(same_bits(a[i], b[i]));
    }
}

TEST_CASE("parallel map rethrows the first failure by index") {
    auto f = [](std::size_t i) -> int {
        if (i == 17 || i == 90) throw Error(ErrorKind::SymbolPole, std::to_string(i));
        return static_cast<int>(i);
    };
    try {
        parallel_map(100, 4, f);
        FAIL("no exception");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("17") != std::string::npos);
    }
}

TEST_CASE("reductions treat NaN as worst") {
    const std::vector<double> xs{1.0, 5.0, kNaN, 0.5};
    CHECK(std::isnan(reduce_max(xs).worst));
    CHECK(reduce_max(xs).worst_index == 2);
    CHECK(std::isnan(reduce_min(xs).worst));
    const std::vector<double> ys{1.0, 5.0, 0.5};
    CHECK(reduce_max(ys).worst == 5.0);
    CHECK(reduce_min(ys).worst == 0.5);
    CHECK(reduce_min(ys).worst_index == 2);
    CHECK(reduce_max({}).n == 0);
}

TEST_CASE("sampler: on Sigma, respects gamma_min, seeded") {
    const auto a = sample_sigma(2000, 5, 1.5, 0.01), b = sample_sigma(2000, 5, 1.5, 0.01);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].on_sigma(1e-12));
        CHECK(a[i].gamma >= 0.01 - 1e-15);
        CHECK(same_bits(a[i].delta, b[i].delta));
    }
    CHECK(a[0].eta != sample_sigma(1, 6, 1.5, 0.01)[0].eta);
}
